"""URL and email phishing-cue analysis."""

from .config import Brand, BrandLexicon, CueConfig, default_brand_lexicon, default_cue_config
from .cues import (
    EMAIL_CUE_KINDS,
    URL_CUE_KINDS,
    Cue,
    CueKind,
    extract_email_cues,
    extract_url_cues,
    fold_confusables,
    osa_distance,
)
from .emails import EmailLink, EmailMessage
from .urls import HostKind, MalformedUrl, ParsedUrl, parse_url, registrable_domain_of
from .verdict import (
    NO_CUE_TIP,
    TIP_TEXTS,
    Label,
    TeacherTip,
    UnknownCueKind,
    Verdict,
    analyze_email,
    analyze_url,
    score,
    tip_for,
)

__all__ = [
    "Brand",
    "BrandLexicon",
    "Cue",
    "CueConfig",
    "CueKind",
    "EMAIL_CUE_KINDS",
    "EmailLink",
    "EmailMessage",
    "HostKind",
    "Label",
    "MalformedUrl",
    "NO_CUE_TIP",
    "ParsedUrl",
    "TIP_TEXTS",
    "TeacherTip",
    "URL_CUE_KINDS",
    "UnknownCueKind",
    "Verdict",
    "analyze_email",
    "analyze_url",
    "default_brand_lexicon",
    "default_cue_config",
    "extract_email_cues",
    "extract_url_cues",
    "fold_confusables",
    "osa_distance",
    "parse_url",
    "registrable_domain_of",
    "score",
    "tip_for",
]
