# This file intentionally left empty to make the directory a Python package 