#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Objects running verification suites."""

import os
import sys
from copy import deepcopy
import importlib

# multiprocessing
import multiprocessing as mp
import queue  # imported for using queue.Empty exception

# loopforge specific imports
from . import fileio
from .errors import UnknownSuite
from .report import SuiteReport

__all__ = ['SUITES', 'Suite', 'SuiteHandler', 'deep_update', 'run_suite']

indent1 = ' * '
indent2 = '   - '

SUITES = ('dirac', 'fock', 'holonomy', 'lie', 'loops', 'paths', 'weights')


def load_module(name):
    """Import the module implementing a suite"""
    if name not in SUITES:
        raise UnknownSuite('unknown suite `{}` (choose from {} or all)'.format(
            name, ', '.join(SUITES)))
    return importlib.import_module('loopforge.modules.' + name)


def deep_update(base, overrides):
    """Nested-key merge of `overrides` into a copy of `base`"""

    out = deepcopy(base)
    for key, val in (overrides or {}).items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = deep_update(out[key], val)
        else:
            out[key] = deepcopy(val)
    return out


def config_echo(config):
    """Configuration echo (N, n, K, P, seed, tol) of a suite configuration"""
    trunc = config.get('truncation', {})
    fock = config.get('fock', {})
    return {
        'N': trunc.get('max_mode'),
        'n': trunc.get('dim'),
        'K': fock.get('window'),
        'P': fock.get('particle_cap'),
        'seed': config.get('seed'),
        'tol': trunc.get('tol'),
    }


class Suite(object):
    """The Suite class wraps verification modules into an object.

    Attributes:
        data (dict): dictionary of pandas.DataFrame objects

    Required module functions 'run' and 'defaults' are passed through
    """

    def __init__(self, module, output=None):
        """Constructor for `Suite` object.

        Arguments:
           module (module): handle to module running the checks
           output (dict): generated by `SuiteHandler`
        """

        # ensure that module is well formed
        msg = 'module `{}` is missing attribute `{}`'
        for attr in ['defaults', 'run']:
            assert hasattr(module, attr), msg.format(module.__name__, attr)

        self._module = module
        self._output = output
        self._config = None
        self.data = None

    @classmethod
    def from_module(cls, module, output=None):
        """Alternative constructor for `Suite` object.

        The `from_module` instantiation call renames the class
        based on the module name.
        """

        # create a name that reflect the module name (CamelCase)
        name = module.__name__.split('.')[-1]
        name = ''.join([m.title() for m in name.split('_')])

        return type(name, (cls, ), {})(module, output)

    @property
    def name(self):
        return self._module.__name__.split('.')[-1]

    def run(self, config=None, verbosity=0):
        """Run the checks of the wrapped module.

        Arguments:
           config (dict): configuration (default: module defaults)
           verbosity (int): verbosity level
        """

        if config is None:
            config = self._module.defaults()

        self._config = config
        self.data = self._module.run(self.name, verbosity=verbosity, **config)

    def defaults(self):
        """Pass-through returning module defaults as a dictionary"""
        return self._module.defaults()

    def report(self):
        """SuiteReport assembled from the last run"""
        assert self.data is not None, 'suite `{}` has not run'.format(
            self.name)
        return SuiteReport.from_frame(self.name, self.data[self.name],
                                      config_echo(self._config))


class SuiteHandler(object):
    """Class handling suite selection and configuration overrides."""

    def __init__(self, suites, overrides=None, output=None, verbosity=0):
        """Constructor

        Arguments:
            suites (list or str): suite names, or 'all'
            overrides (dict): nested configuration overriding module defaults
            output (dict): dictionary specifying file output
            verbosity (int): verbosity level
        """

        if isinstance(suites, str):
            suites = list(SUITES) if suites == 'all' else [suites]
        for name in suites:
            load_module(name)

        self._suites = sorted(suites)
        self._overrides = overrides or {}
        self._output = output
        self.verbosity = verbosity

        if self.verbosity:
            print('Verification suites: {}'.format(', '.join(self._suites)),
                  file=sys.stderr)

    @classmethod
    def from_yaml(cls, yaml_file, suites='all', name=None, path=None,
                  **kwargs):
        """Alternate constructor using YAML file as input.

        Args:
           yaml_file (string): yaml file
        Kwargs:
           suites (list or str): suites to run
           name (string): output name (overrides yaml)
           path (string): file path (both yaml and output)
           kwargs (optional): dependent on implementation (e.g. verbosity)
        """

        content = fileio.load_config(yaml_file, path)
        return cls.from_dict(content, suites=suites, name=name, path=path,
                             **kwargs)

    @classmethod
    def from_dict(cls, content, suites='all', name=None, path=None, **kwargs):
        """Alternate constructor using a dictionary as input.

        Args:
           content (dict): dictionary with `loopforge` marker and `defaults`
        Kwargs:
           suites (list or str): suites to run
           name (string): output name (overrides yaml)
           path (string): output path (overrides yaml)
        """

        assert 'loopforge' in content, 'obsolete yaml file format'
        overrides = content.get('defaults', {})
        output = content.get('output', None)
        if output is not None or name is not None:
            output = cls._parse_output(output, fname=name, fpath=path)

        return cls(suites, overrides, output, **kwargs)

    @staticmethod
    def _parse_output(dct, fname=None, fpath=None):
        """Parse output dictionary (hidden function)

        Overrides defaults with keyword arguments.
        """

        if dct is None:
            dct = {}

        # establish defaults
        out = dct.copy()
        out['path'] = None  # should never be specified inside of yaml
        if 'format' not in out:
            out['format'] = ''
        if 'force_overwrite' not in out:
            out['force_overwrite'] = True
        if 'name' not in out:
            out['name'] = 'report'

        fformat = out['format']

        # file name keyword overrides dictionary
        if fname is not None:

            # fname may contain path information
            head, fname = os.path.split(fname)
            if len(head) and fpath is not None:
                raise RuntimeError('contradictory specification')
            elif len(head):
                fpath = head

            fname, ext = os.path.splitext(fname)
            if ext in fileio.supported:
                fformat = ext

            out['name'] = fname

        # file path keyword overrides dictionary
        if fpath is not None:
            out['path'] = fpath

        # file format
        if len(fformat):
            out['format'] = fformat.lstrip('.')
        else:
            out['format'] = 'json'

        out['file_name'] = '.'.join([out['name'], out['format']])

        return out

    def __iter__(self):
        for task in self.tasks:
            yield task

    def __getitem__(self, task):
        return self.configuration(task)

    @property
    def tasks(self):
        """Names of selected suites"""
        return list(self._suites)

    def configuration(self, task):
        """Module defaults merged with overrides"""
        module = load_module(task)
        return deep_update(module.defaults(), self._overrides)

    @property
    def verbose(self):
        return self.verbosity > 0

    @property
    def output_name(self):
        if self._output is None:
            return None
        if self._output['path'] is None:
            return self._output['file_name']
        return os.path.join(self._output['path'], self._output['file_name'])

    def report(self, reports):
        """Single report for the selection (merged when several suites ran)"""
        if len(reports) == 1:
            return reports[0]
        return SuiteReport.merge(reports)

    def save(self, report):
        """Save a report according to the output specification"""

        if self._output is None:
            return

        oname = self._output['file_name']
        opath = self._output['path']
        force = self._output['force_overwrite']
        if oname.endswith('.json'):
            data = report.to_dict()
        else:
            data = report.to_groups()

        fileio.save(oname, data, mode='w', force=force, path=opath)

    def run_task(self, task, verbosity=None):
        """Run a single suite and return its report"""

        assert task in self.tasks, 'unknown task `{}`'.format(task)
        if verbosity is None:
            verbosity = self.verbosity

        obj = Suite.from_module(load_module(task), self._output)
        obj.run(self.configuration(task), verbosity=verbosity)
        return obj.report()

    def run_serial(self, verbosity=None):
        """Run suites in series"""

        if verbosity is None:
            verbosity = self.verbosity

        reports = []
        for t in self.tasks:

            if verbosity > 0:
                print(indent1 + 'running suite `{}`'.format(t),
                      file=sys.stderr)

            reports.append(self.run_task(t, verbosity=verbosity))

        return self.report(reports)

    def run_parallel(self, number_of_processes=None, verbosity=None,
                     poll=1.):
        """Run suites using multiprocessing.

        Keyword Arguments:
            number_of_processes (int): worker count (default: half the cores)
            verbosity (int): verbosity level
            poll (float): seconds between checks on worker liveness
        """

        if number_of_processes is None:
            number_of_processes = max(1, mp.cpu_count() // 2)
        number_of_processes = min(number_of_processes, len(self.tasks))

        if verbosity is None:
            verbosity = self.verbosity

        if verbosity > 0:
            print(indent1 + 'running suites using ' +
                  '{} cores'.format(number_of_processes), file=sys.stderr)

        # set up queues
        tasks_to_accomplish = mp.Queue()
        finished_tasks = mp.Queue()
        for t in self.tasks:
            tasks_to_accomplish.put((t, self.configuration(t)))

        lock = mp.Lock()

        # creating processes
        processes = []
        for w in range(number_of_processes):
            p = mp.Process(
                target=worker,
                args=(tasks_to_accomplish, finished_tasks, lock, verbosity))
            processes.append(p)
            p.start()

        # results are drained before joining; a worker blocks on exit until
        # its queued items are consumed
        reports = {}
        while len(reports) < len(self.tasks):
            try:
                task, report, msg = finished_tasks.get(timeout=poll)
            except queue.Empty:
                if any(p.is_alive() for p in processes):
                    continue
                # workers are gone; anything still queued was already sent
                try:
                    task, report, msg = finished_tasks.get(timeout=poll)
                except queue.Empty:
                    break
            reports[task] = report
            if verbosity > 1:
                print(indent2 + msg, file=sys.stderr)

        # suites lost with a dead worker are reported as failures
        for t in self.tasks:
            if t not in reports:
                msg = 'worker exited before suite `{}` reported'.format(t)
                reports[t] = SuiteReport.aborted(t, msg)

        # completing process
        for p in processes:
            p.join()

        return self.report([reports[t] for t in self.tasks])


def worker(tasks_to_accomplish, tasks_that_are_done, lock, verbosity):

    this = mp.current_process().name

    if verbosity > 1:
        with lock:
            print(indent2 + 'starting ' + this, file=sys.stderr)

    while True:
        try:
            # retrieve next suite
            task, config = tasks_to_accomplish.get_nowait()

        except queue.Empty:
            # no tasks left
            if verbosity > 1:
                with lock:
                    print(indent2 + 'terminating ' + this, file=sys.stderr)
            break

        else:

            msg = indent1 + 'running suite `{}` ({})'
            if verbosity > 0:
                with lock:
                    print(msg.format(task, this), file=sys.stderr)

            try:
                obj = Suite.from_module(load_module(task))
                obj.run(config, verbosity=verbosity)
                report = obj.report()
            except Exception as err:
                report = SuiteReport.aborted(task, err, config_echo(config))
                msg = 'suite `{}` aborted in {}: {}'.format(task, this, err)
            else:
                msg = 'suite `{}` completed by {}'.format(task, this)

            tasks_that_are_done.put((task, report, msg))

    return True


def run_suite(name, config=None, verbosity=0):
    """Run a suite (or 'all') with nested configuration overrides.

    Raises:
        UnknownSuite: for names other than the module suites and 'all'
    """

    if name != 'all':
        load_module(name)
    handler = SuiteHandler(name, config, verbosity=verbosity)
    return handler.run_serial()
