"""Risk scoring and teacher tips over extracted cue sets."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import BrandLexicon, CueConfig
from .cues import Cue, CueKind, extract_email_cues, extract_url_cues
from .emails import EmailMessage
from .urls import parse_url


class Label(str, Enum):
    LEGIT = "legit"
    PHISH = "phish"


class UnknownCueKind(KeyError):
    """A cue kind with no configured weight reached the scorer."""


@dataclass(frozen=True)
class Verdict:
    cues: tuple[Cue, ...]
    risk_score: float
    label: Label

    def cue_kinds(self) -> set[CueKind]:
        return {cue.kind for cue in self.cues}


def score(cues: list[Cue] | tuple[Cue, ...], cfg: CueConfig) -> Verdict:
    """risk = min(1, sum of weights); label by the configured threshold."""
    total = 0.0
    for cue in cues:
        if cue.kind not in cfg.weights:
            raise UnknownCueKind(cue.kind)
        total += cue.weight
    risk = min(1.0, total)
    label = Label.PHISH if risk >= cfg.threshold else Label.LEGIT
    return Verdict(cues=tuple(cues), risk_score=risk, label=label)


@dataclass(frozen=True)
class TeacherTip:
    text: str
    cue_kind: CueKind | None


TIP_TEXTS: dict[CueKind, str] = {
    CueKind.IP_HOST: "website addresses associate with numbers in the front are generally scams",
    CueKind.BRAND_HYPHEN: "a company name followed by a hyphen in a URL is generally a scam",
    CueKind.BRAND_IN_PATH_OR_SUBDOMAIN: "a brand name buried in the path or subdomain does not make the site that brand's",
    CueKind.USERINFO_PRESENT: "anything before an @ in a web address is a decoy; the real site comes after it",
    CueKind.INSECURE_SCHEME: "legitimate sign-in pages use https; plain http offers no lock",
    CueKind.EXCESSIVE_SUBDOMAINS: "a long chain of dots before the domain is a common disguise",
    CueKind.LOOKALIKE_DOMAIN: "look closely: swapped letters and digits mimic a brand's real address",
    CueKind.GENERIC_SALUTATION: "phishing emails often contain generic salutation",
    CueKind.URGENT_REQUEST: "emails associated with urgent requests are generally phishing emails",
    CueKind.LOGO_SENDER_MISMATCH: "a trusted logo means nothing if the sender's address belongs to someone else",
    CueKind.FAKE_LINK: "check before you click: link text and its real destination should match",
    CueKind.SUSPICIOUS_ATTACHMENT: "unexpected attachments that can run programs are classic phishing traps",
}

NO_CUE_TIP = TeacherTip(
    text="No suspicious features found — compare against the address you know",
    cue_kind=None,
)


def tip_for(cues: list[Cue] | tuple[Cue, ...]) -> TeacherTip:
    """Tip bound to the highest-weight cue; ties keep emission order."""
    if not cues:
        return NO_CUE_TIP
    top = max(cues, key=lambda cue: cue.weight)
    return TeacherTip(text=TIP_TEXTS[top.kind], cue_kind=top.kind)


def analyze_url(raw: str, lex: BrandLexicon, cfg: CueConfig) -> Verdict:
    parsed = parse_url(raw, cfg.extra_suffixes)
    return score(extract_url_cues(parsed, lex, cfg), cfg)


def analyze_email(message: EmailMessage, lex: BrandLexicon, cfg: CueConfig) -> Verdict:
    return score(extract_email_cues(message, lex, cfg), cfg)
