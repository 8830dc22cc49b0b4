#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Parser object."""

from pint import UnitRegistry

ureg = UnitRegistry()

__all__ = ['Parser', 'ureg']


class Parser(object):
    """A lightweight class that handles units.

    The handling mimics that of a python dictionary, while adding direct
    access to keyed values via attributes. Entries of the form
    `[value, unit, 'description']` are returned as `pint.Quantity`, nested
    dictionaries as `Parser` objects.
    """

    def __init__(self, dct):

        if isinstance(dct, Parser):
            dct = dct.raw
        self.raw = dict(dct or {})

    def __getattr__(self, attr):

        if attr == 'raw' or attr not in self.raw:
            raise AttributeError("unknown attribute '{}'".format(attr))

        return self[attr]

    def __getitem__(self, key):

        val = self.raw[key]

        if isinstance(val, dict):
            return Parser(val)
        elif self.is_quantity(val):
            return ureg.Quantity(val[0], ureg[val[1]])
        return val

    def __contains__(self, key):
        return key in self.raw

    @staticmethod
    def is_quantity(val):
        """Check for a `[value, unit, description]` entry"""
        return isinstance(val, (list, tuple)) and len(val) == 3 and \
            isinstance(val[1], str) and not isinstance(val[0], (str, bool))

    def get(self, key, default=None):
        if key not in self.raw:
            return default
        return self[key]

    def magnitude(self, key, unit):
        """Value of a quantity entry in the given unit (plain values pass)"""
        val = self[key]
        if isinstance(val, ureg.Quantity):
            return val.m_as(unit)
        return val

    def __repr__(self):
        return repr(self.raw)

    def keys(self):
        return self.raw.keys()
