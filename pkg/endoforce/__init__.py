#!/usr/bin/env python
# -*- coding:utf-8 -*-
__version__ = "1.0.0"

from endoforce.base import EndoForceTwin
