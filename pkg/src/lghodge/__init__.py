"""Exact-arithmetic toolkit for Landau-Ginzburg Hodge numbers of rational elliptic surfaces with an I_d fiber."""

from __future__ import annotations

from .hodge import check_all, f_table, h_table, x_hodge_table
from .surface import build_surface_model

__all__ = ["build_surface_model", "check_all", "f_table", "h_table", "x_hodge_table"]
__version__ = "0.1.0"
