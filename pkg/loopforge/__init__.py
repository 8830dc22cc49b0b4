#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Package exports."""

from .parser import *
from .errors import *
from .report import *
from .suite import *
from . import fileio
from . import modules

from ._version import __version__
