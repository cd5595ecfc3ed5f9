"""Exact q-series engine for Gopakumar-Vafa invariants of Calabi-Yau threefolds with an involution."""

__version__ = "0.1.0"
