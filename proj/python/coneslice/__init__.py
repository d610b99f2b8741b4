"""Null-cone slices, Weyl rescalings and the SO(2,n) conformal action."""

import json

from ._core import *  # noqa: F401,F403
from ._core import _deformation_campaign, _group_campaign

__all__ = [name for name in dir() if not name.startswith("_")]


def verify_theorem(n=4, H=1.0, scale_factor="zero", trials=1000, seed=0, tol=1e-9, threads=0):
    """Weyl-relation campaign on the FLRW space built from `scale_factor`; returns the report dict."""
    space = build_flrw(scale_factor, n, H)  # noqa: F405
    return json.loads(_deformation_campaign(space.deformation, space.sigma_chart, trials, seed, tol, threads))


def verify_group(n=4, H=1.0, scale_factor="zero", trials=1000, seed=0, tol=1e-9, threads=0, rho=0.5):
    """Conformal-factor campaign for the SO(2,n) action on W; returns the report dict."""
    space = build_flrw(scale_factor, n, H)  # noqa: F405
    return json.loads(_group_campaign(space.k, space.w_chart, trials, seed, tol, threads, rho))


__all__ += ["verify_theorem", "verify_group"]
