#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification configuration files.

A configuration file carries a `loopforge` version marker, nested
`defaults` overriding the suite defaults and an optional `output` block.
"""

import os
from ruamel import yaml

__all__ = ['load_yaml', 'load_config', 'bundled']

__DATA_PATH = os.path.join(
    os.path.dirname(os.path.dirname(__file__)), 'examples')


def bundled():
    """Names of the configuration files shipped with loopforge"""
    return sorted(f for f in os.listdir(__DATA_PATH) if f.endswith('.yaml'))


def load_yaml(fname, path=None):
    """Load yaml from file

    Arguments:
        fname (str): file name

    Keyword Arguments:
        path (str): relative/absolute path. Empty ('') for the
            working directory, 'default' for bundled configurations
    """

    if path == 'default':
        fname = os.path.join(__DATA_PATH, fname)
    elif path not in ['', None]:
        fname = os.path.join(path, fname)

    with open(fname) as yml:
        return yaml.load(yml, Loader=yaml.SafeLoader)


def load_config(fname, path=None):
    """Load a configuration file and check its layout.

    Raises:
        ValueError: if the marker is missing or `defaults` is not a mapping
    """

    content = load_yaml(fname, path=path)
    if not isinstance(content, dict) or 'loopforge' not in content:
        raise ValueError('`{}` is not a loopforge configuration'.format(fname))
    if not isinstance(content.get('defaults', {}), dict):
        raise ValueError('`defaults` in `{}` needs to be a mapping'.format(
            fname))
    return content
