"""Built-in test domains with documented expected values."""

from __future__ import annotations

from .domain import Domain, domain_from_config

__all__ = ["builtin_domains", "get_domain", "BUILTIN_CONFIGS"]

# Expected values recorded per entry are what the test suite pins down:
#   paper-model: complex contact orders at 0 along e2/e3 are 4/6; the real
#     lines i*e2 and i*e3 have orders infinity and 10; linear type 6;
#     tau(0, e2, eps) ~ eps^(1/4), tau(0, e3, eps) ~ eps^(1/6).
#   half-space: every tangential restriction vanishes; tau along the normal
#     equals eps exactly; all pseudodistance properties hold with constant 1.
#   ball: strictly convex, contact order 2 in every tangent direction.
#   rigid-2d: one degenerate tangent direction of order 4.
BUILTIN_CONFIGS: dict[str, dict] = {
    "paper-model": {
        "name": "paper-model",
        "defining": "y1 + x2^4 + x3^6 + y3^10",
        "nvars": 3,
        "m": 5,
        "w0": 0.5,
        "rmax": 10.0,
        "bbox": 0.5,
        "anchor": [[0.0, -0.05], [0.0, 0.0], [0.0, 0.0]],
    },
    "half-space": {
        "name": "half-space",
        "defining": "y1",
        "nvars": 3,
        "m": 1,
        "w0": 0.5,
        "rmax": 10.0,
        "bbox": 0.5,
        "anchor": [[0.0, -0.05], [0.0, 0.0], [0.0, 0.0]],
    },
    "ball": {
        "name": "ball",
        "defining": "x1^2 + y1^2 + x2^2 + y2^2 + x3^2 + y3^2 - 1",
        "nvars": 3,
        "m": 1,
        "w0": 0.5,
        "rmax": 10.0,
        "bbox": 2.2,
        "anchor": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    },
    "rigid-2d": {
        "name": "rigid-2d",
        "defining": "y1 + x2^4",
        "nvars": 2,
        "m": 2,
        "w0": 0.5,
        "rmax": 10.0,
        "bbox": 0.5,
        "anchor": [[0.0, -0.05], [0.0, 0.0]],
    },
}


def builtin_domains() -> dict[str, Domain]:
    """Catalog of the shipped domains, keyed by name."""
    return {name: domain_from_config(cfg) for name, cfg in BUILTIN_CONFIGS.items()}


def get_domain(name: str) -> Domain:
    try:
        cfg = BUILTIN_CONFIGS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_CONFIGS))
        raise KeyError(f"unknown builtin domain {name!r}; known: {known}") from None
    return domain_from_config(cfg)
