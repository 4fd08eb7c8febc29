"""Mod-p Chow rings of classifying spaces of finite groups."""

__version__ = "0.1.0"
