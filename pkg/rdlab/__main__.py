# -*- coding: utf-8 -*-
"""python -m rdlab"""
import sys

from rdlab.main import main

sys.exit(main())
