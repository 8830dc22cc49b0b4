#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""CSV report input/output

Report groups are written as leading `# group.key: value` comment lines with
JSON values, followed by the check table.
"""

import io
import os
import pandas as pd

# local imports
from .json import to_text, from_text

__all__ = ['csvls', 'to_csv', 'from_csv']

COMMENT = '# '


def _getfile(fname, path=None):
    """helper function"""

    if path not in ['', None]:
        fname = os.path.join(path, fname)

    return fname, os.path.isfile(fname)


def _header(line):
    """Split a header line into (group, key, value)"""
    entry, text = line[len(COMMENT):].rstrip('\n').split(': ', 1)
    group, key = entry.split('.', 1)
    return group, key, from_text(text)


def csvls(iname, path=None):
    """Retrieve group names stored in a csv file"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        return []

    groups = []
    with open(fname) as fid:
        for line in fid:
            if not line.startswith(COMMENT):
                break
            group = _header(line)[0]
            if group not in groups:
                groups.append(group)

    return groups + ['table']


def to_csv(oname, groups, path=None, mode='a', force=True):
    """Write flat dictionaries and one table to a csv file.

    Arguments:
        oname (str): file name
        groups (dict): group name to dict (header) or DataFrame (table)
    """

    fname, fexists = _getfile(oname, path=path)
    if fexists and not force:
        msg = 'Cannot overwrite existing file `{}` (use force to override)'
        raise RuntimeError(msg.format(oname))

    header = []
    table = None
    for name, data in groups.items():
        if isinstance(data, dict):
            for key, val in data.items():
                assert not isinstance(val, dict), \
                    'csv header groups need to be flat (`{}.{}`)'.format(
                        name, key)
                header.append('{}{}.{}: {}'.format(COMMENT, name, key,
                                                   to_text(val)))
        elif isinstance(data, (pd.DataFrame, pd.Series)):
            assert table is None, 'csv files hold a single table'
            table = data

    with open(fname, 'w') as fid:
        for line in header:
            fid.write(line + '\n')
        if table is not None:
            table.to_csv(fid, index=False, lineterminator='\n')


def from_csv(iname, path=None):
    """Load header groups and the check table from a csv file"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        msg = 'File `{}` does not exist'
        raise RuntimeError(msg.format(iname))

    out = {}
    body = []
    with open(fname) as fid:
        for line in fid:
            if not body and line.startswith(COMMENT):
                group, key, val = _header(line)
                out.setdefault(group, {})[key] = val
            else:
                body.append(line)

    if body:
        out['table'] = pd.read_csv(io.StringIO(''.join(body)))
    return out
