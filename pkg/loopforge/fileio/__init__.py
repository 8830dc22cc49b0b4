#!/usr/bin/env python
# -*- coding: utf-8 -*-

from .fileio import *
from .yaml import *
