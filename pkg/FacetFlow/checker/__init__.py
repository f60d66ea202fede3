# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""Initialize the checker package."""
