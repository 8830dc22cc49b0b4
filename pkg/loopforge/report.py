#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Check execution and suite reports."""

import hashlib
import json
import sys
import time
import numpy as np
import pandas as pd

from .errors import SkipCheck
from .loops import FourierLoop

__all__ = ['CheckRunner', 'SuiteReport', 'check_seed', 'encode']

indent2 = '   - '

STATUS = ('pass', 'fail', 'skip')

COLUMNS = ['name', 'anchor', 'status', 'residual', 'tolerance', 'runtime_ms',
           'detail']


def check_seed(seed, name):
    """Per-check seed derived from (seed, check name)"""
    digest = hashlib.sha256('{}:{}'.format(seed, name).encode()).digest()
    return int.from_bytes(digest[:8], 'big')


def encode(value):
    """Convert arrays, loops and numbers into JSON compatible objects"""

    if isinstance(value, FourierLoop):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return encode(np.stack([value.real, value.imag], axis=-1))
        return value.tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    return value


class CheckRunner(object):
    """Runs named checks and collects their outcome.

    Arguments:
        suite (str): suite name (prefix of the per-check seeds)

    Keyword Arguments:
        seed (int): master seed
        tol (float): default tolerance
        timing (bool): record runtimes (0.0 otherwise)
        verbosity (int): verbosity level
    """

    def __init__(self, suite, seed=42, tol=1e-9, timing=False, verbosity=0):
        self.suite = suite
        self.seed = seed
        self.tol = tol
        self.timing = timing
        self.verbosity = verbosity
        self.checks = []

    def rng(self, name):
        """Random generator owned by a single check"""
        return np.random.default_rng(
            check_seed(self.seed, '{}.{}'.format(self.suite, name)))

    def run(self, name, anchor, func, tolerance=None):
        """Run a check.

        Arguments:
            name (str): check name (stable within a major version)
            anchor (str): short description of the property checked
            func (callable): rng -> residual, or rng -> (residual, detail)

        Keyword Arguments:
            tolerance (float): pass threshold (default: runner tolerance)
        """

        if tolerance is None:
            tolerance = self.tol

        start = time.perf_counter()
        detail = None
        try:
            out = func(self.rng(name))
        except SkipCheck as err:
            status, residual, detail = 'skip', None, {'reason': err.reason}
        except Exception as err:
            # numerical and assertion errors fail the check, not the suite
            status, residual = 'fail', None
            detail = {'error': type(err).__name__, 'message': str(err)}
        else:
            if isinstance(out, tuple):
                residual, detail = out
            else:
                residual = out
            residual = float(residual)
            if np.isfinite(residual) and residual <= tolerance:
                status = 'pass'
            else:
                status = 'fail'
                if not np.isfinite(residual):
                    residual = None
            if status == 'pass':
                detail = None
        elapsed = 1e3 * (time.perf_counter() - start)

        entry = {
            'name': name,
            'anchor': anchor,
            'status': status,
            'residual': residual,
            'tolerance': float(tolerance),
            'runtime_ms': round(elapsed, 3) if self.timing else 0.,
            'detail': None if detail is None else json.dumps(encode(detail))
        }
        self.checks.append(entry)

        if self.verbosity > 1:
            msg = indent2 + '{:<34} {:<4} residual={} ({:.1f} ms)'
            print(msg.format(name, status, residual, elapsed),
                  file=sys.stderr)

        return entry

    def frame(self):
        """Checks as a DataFrame"""
        return pd.DataFrame(self.checks, columns=COLUMNS)


class SuiteReport(object):
    """Outcome of a verification suite.

    Attributes:
        suite (str): suite name
        config (dict): configuration echo (N, n, K, P, seed, tol)
        checks (list): check entries
    """

    def __init__(self, suite, checks, config):

        for check in checks:
            assert check['status'] in STATUS, 'unknown status `{}`'.format(
                check['status'])
            assert check['anchor'], 'check `{}` lacks an anchor'.format(
                check['name'])
        self.suite = suite
        self.checks = list(checks)
        self.config = dict(config)

    @classmethod
    def from_frame(cls, suite, frame, config):
        """Alternative constructor from a DataFrame of checks"""
        checks = []
        for row in frame.to_dict('records'):
            entry = {}
            for key in COLUMNS:
                val = row.get(key)
                if isinstance(val, float) and np.isnan(val):
                    val = None
                entry[key] = val
            checks.append(entry)
        return cls(suite, checks, config)

    @classmethod
    def aborted(cls, suite, error, config=None):
        """Report holding a single failed check for a suite that crashed"""
        if isinstance(error, BaseException):
            detail = {'error': type(error).__name__, 'message': str(error)}
        else:
            detail = {'error': 'RuntimeError', 'message': str(error)}
        entry = {
            'name': 'completed',
            'anchor': 'suite runs to completion',
            'status': 'fail',
            'residual': None,
            'tolerance': 0.,
            'runtime_ms': 0.,
            'detail': json.dumps(detail)
        }
        return cls(suite, [entry], config or {})

    @classmethod
    def merge(cls, reports, suite='all'):
        """Combined report with check names prefixed by their suite"""
        reports = sorted(reports, key=lambda r: r.suite)
        checks = []
        for rep in reports:
            for check in rep.checks:
                entry = dict(check)
                entry['name'] = '{}.{}'.format(rep.suite, check['name'])
                checks.append(entry)
        config = reports[0].config if reports else {}
        return cls(suite, checks, config)

    @property
    def exit_code(self):
        """0 if all non-skipped checks pass"""
        return int(any(c['status'] == 'fail' for c in self.checks))

    def count(self, status):
        return sum(1 for c in self.checks if c['status'] == status)

    def to_dict(self):
        checks = []
        for check in self.checks:
            entry = {key: check[key] for key in COLUMNS[:-1]}
            if check.get('detail'):
                entry['detail'] = json.loads(check['detail'])
            checks.append(entry)
        return {'suite': self.suite, 'config': self.config, 'checks': checks}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_frame(self):
        return pd.DataFrame(self.checks, columns=COLUMNS)

    def to_groups(self):
        """Tabular export groups (configuration and check table)"""
        config = {'suite': self.suite}
        config.update(self.config)
        return {'config': config, 'checks': self.to_frame()}

    def __repr__(self):
        return 'SuiteReport({}: {} pass, {} fail, {} skip)'.format(
            self.suite, self.count('pass'), self.count('fail'),
            self.count('skip'))
