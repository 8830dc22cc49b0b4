#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suites (one module per library module)."""

from . import loops
from . import lie
from . import paths
from . import holonomy
from . import weights
from . import fock
from . import dirac
