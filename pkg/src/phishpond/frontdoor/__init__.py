"""Network protocol, CLI, and headless play surfaces."""

from .protocol import Frontdoor, PROTOCOL_VERSION, REFERENCE_GUIDE_URL

__all__ = ["Frontdoor", "PROTOCOL_VERSION", "REFERENCE_GUIDE_URL"]
