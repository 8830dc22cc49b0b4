#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""JSON report input/output"""

import json
import os
import pandas as pd

__all__ = ['jsonls', 'to_json', 'from_json', 'dumps', 'to_text', 'from_text']


def _getfile(fname, path=None):
    """helper function"""

    if path not in ['', None]:
        fname = (os.sep).join([path, fname])

    return fname, os.path.isfile(fname)


def _plain(data):
    """DataFrames become lists of records"""
    if isinstance(data, pd.DataFrame):
        return data.to_dict('records')
    if isinstance(data, dict):
        return {k: _plain(v) for k, v in data.items()}
    return data


def dumps(data):
    """Serialize a report dictionary (stable key order, 17 digits)"""
    return json.dumps(_plain(data), indent=2) + '\n'


def to_text(value):
    """Single-line text of a configuration value (csv headers, xlsx cells)"""
    return json.dumps(value)


def from_text(text):
    """Inverse of `to_text`; text that is not JSON is returned unchanged"""
    try:
        return json.loads(text)
    except (TypeError, ValueError):
        return text


def jsonls(iname, path=None):
    """Retrieve top level keys of a json file"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        return []

    with open(fname) as fid:
        return list(json.load(fid).keys())


def to_json(oname, data, path=None, mode='a', force=True):
    """Write a dictionary to a json file (content is always replaced)"""

    fname, fexists = _getfile(oname, path=path)
    if fexists and not force:
        msg = 'Cannot overwrite existing file `{}` (use force to override)'
        raise RuntimeError(msg.format(oname))

    with open(fname, 'w') as fid:
        fid.write(dumps(data))


def from_json(iname, path=None):
    """Load content from json file"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        msg = 'File `{}` does not exist'
        raise RuntimeError(msg.format(iname))

    with open(fname) as fid:
        return json.load(fid)
