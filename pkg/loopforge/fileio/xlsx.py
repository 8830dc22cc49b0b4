#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Excel report input/output

Dictionaries become two-column `key`/`value` sheets with JSON values; the
check table is written as is. All sheets go through a single writer.
"""

import os
import pandas as pd

# local imports
from .json import to_text, from_text

__all__ = ['xlsxls', 'to_xlsx', 'from_xlsx']

PAIR = ['key', 'value']


def _getfile(fname, path=None):
    """helper function"""

    if path not in ['', None]:
        fname = os.path.join(path, fname)

    return fname, os.path.isfile(fname)


def xlsxls(iname, path=None):
    """Retrieve names of sheets within a xlsx file"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        return []

    with pd.ExcelFile(fname) as xlsx:
        return list(xlsx.sheet_names)


def to_xlsx(oname, sheets, path=None, mode='a', force=True):
    """Write report groups to sheets of a xlsx file.

    Arguments:
        oname (str): file name
        sheets (dict): sheet name to flat dict or DataFrame

    Keyword Arguments:
        mode (str): 'w' replaces the workbook, 'a' adds sheets to it
        force (bool): allow replacing an existing file or sheet
    """

    fname, fexists = _getfile(oname, path=path)
    if fexists and mode == 'w' and not force:
        msg = 'Cannot overwrite existing file `{}` (use force to override)'
        raise RuntimeError(msg.format(oname))

    if not fexists:
        mode = 'w'
    existing = xlsxls(fname) if mode == 'a' else []
    clash = [s for s in sheets if s in existing]
    if clash and not force:
        msg = 'Cannot overwrite existing sheet `{}` (use force to override)'
        raise RuntimeError(msg.format(clash[0]))

    frames = {}
    for name, data in sheets.items():
        if isinstance(data, dict):
            rows = [(str(k), to_text(v)) for k, v in data.items()]
            frames[name] = pd.DataFrame(rows, columns=PAIR)
        elif isinstance(data, pd.Series):
            frames[name] = data.to_frame()
        elif isinstance(data, pd.DataFrame):
            frames[name] = data

    kwargs = {'if_sheet_exists': 'replace'} if mode == 'a' else {}
    with pd.ExcelWriter(fname, engine='openpyxl', mode=mode,
                        **kwargs) as writer:
        for name, frame in frames.items():
            frame.to_excel(writer, sheet_name=name, index=False)


def from_xlsx(iname, path=None):
    """Load content from xlsx file; key/value sheets come back as dicts"""

    fname, fexists = _getfile(iname, path=path)
    if not fexists:
        msg = 'File `{}` does not exist'
        raise RuntimeError(msg.format(iname))

    out = {}
    with pd.ExcelFile(fname) as xlsx:
        for name in xlsx.sheet_names:
            data = pd.read_excel(xlsx, name)
            if list(data.columns) == PAIR:
                # 'null' is JSON here, not a missing cell
                data = pd.read_excel(xlsx, name, dtype=str,
                                     keep_default_na=False)
                out[name] = {
                    k: from_text(v) for k, v in zip(data['key'], data['value'])
                }
            else:
                out[name] = data

    return out
