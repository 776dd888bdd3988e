"""Phishing cue extraction for URLs and email messages.

Each rule emits at most one cue per kind, in a fixed order, so verdicts
are deterministic and cue evidence always quotes the matched fragment.
URL kinds and email kinds are disjoint; a verdict never mixes them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from .urls import HostKind, ParsedUrl, MalformedUrl, parse_url, registrable_domain_of

if TYPE_CHECKING:
    from .config import BrandLexicon, CueConfig
    from .emails import EmailMessage


class CueKind(str, Enum):
    IP_HOST = "ip_host"
    BRAND_HYPHEN = "brand_hyphen"
    BRAND_IN_PATH_OR_SUBDOMAIN = "brand_in_path_or_subdomain"
    USERINFO_PRESENT = "userinfo_present"
    INSECURE_SCHEME = "insecure_scheme"
    EXCESSIVE_SUBDOMAINS = "excessive_subdomains"
    LOOKALIKE_DOMAIN = "lookalike_domain"
    GENERIC_SALUTATION = "generic_salutation"
    URGENT_REQUEST = "urgent_request"
    LOGO_SENDER_MISMATCH = "logo_sender_mismatch"
    FAKE_LINK = "fake_link"
    SUSPICIOUS_ATTACHMENT = "suspicious_attachment"


URL_CUE_KINDS = frozenset({
    CueKind.IP_HOST,
    CueKind.BRAND_HYPHEN,
    CueKind.BRAND_IN_PATH_OR_SUBDOMAIN,
    CueKind.USERINFO_PRESENT,
    CueKind.INSECURE_SCHEME,
    CueKind.EXCESSIVE_SUBDOMAINS,
    CueKind.LOOKALIKE_DOMAIN,
})

EMAIL_CUE_KINDS = frozenset({
    CueKind.GENERIC_SALUTATION,
    CueKind.URGENT_REQUEST,
    CueKind.LOGO_SENDER_MISMATCH,
    CueKind.FAKE_LINK,
    CueKind.SUSPICIOUS_ATTACHMENT,
})


@dataclass(frozen=True)
class Cue:
    kind: CueKind
    weight: float
    evidence: str


# Digit/letter confusables folded away before lookalike comparison.
CONFUSABLE_FOLD = str.maketrans({"0": "o", "1": "l", "3": "e", "5": "s"})

# Words allowed between a generic salutation and a brand name without
# making the greeting "personal" ("dear customer of the ... bank").
_CONNECTOR_WORDS = frozenset({"of", "at", "from", "the", "and", "your", "a", "an", "to"})

_DOMAIN_RUN_RE = re.compile(r"[A-Za-z0-9._-]+")
_WORDS_RE = re.compile(r"[a-z0-9]+")


def fold_confusables(text: str) -> str:
    return text.translate(CONFUSABLE_FOLD)


def osa_distance(a: str, b: str) -> int:
    """Damerau-Levenshtein (optimal string alignment) edit distance."""
    la, lb = len(a), len(b)
    prev2: list[int] | None = None
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                cur[j] = min(cur[j], prev2[j - 2] + 1)  # type: ignore[index]
        prev2, prev = prev, cur
    return prev[lb]


def find_domains(text: str, extra_suffixes=()) -> list[tuple[str, str]]:
    """Domain-looking fragments in free text as (fragment, registrable).

    A fragment is a maximal run of domain characters, outer dots
    stripped, with non-empty labels and an alphabetic final label of
    two or more letters. Pinned this precisely so an independent
    scanner lands on the same fragments.
    """
    found = []
    for match in _DOMAIN_RUN_RE.finditer(text):
        run = match.group(0).strip(".")
        if "." not in run:
            continue
        labels = run.lower().split(".")
        if any(not label for label in labels):
            continue
        last = labels[-1]
        if not (last.isalpha() and len(last) >= 2):
            continue
        registrable = registrable_domain_of(run.lower(), extra_suffixes)
        if registrable:
            found.append((run, registrable))
    return found


def extract_url_cues(p: ParsedUrl, lex: "BrandLexicon", cfg: "CueConfig") -> list[Cue]:
    cues: list[Cue] = []

    def emit(kind: CueKind, evidence: str) -> None:
        cues.append(Cue(kind=kind, weight=cfg.weight_of(kind), evidence=evidence))

    if p.host_kind is HostKind.IP_ADDRESS:
        emit(CueKind.IP_HOST, p.host)

    labels = p.host.split(".")
    hyphen_hit = None
    for label in labels:
        for _brand_id, token in lex.hyphen_tokens():
            if label.startswith(token + "-") or label.endswith("-" + token):
                hyphen_hit = label
                break
        if hyphen_hit:
            break
    if hyphen_hit:
        emit(CueKind.BRAND_HYPHEN, hyphen_hit)

    misplaced = _brand_outside_home(p, lex)
    if misplaced:
        emit(CueKind.BRAND_IN_PATH_OR_SUBDOMAIN, misplaced)

    if p.userinfo is not None:
        emit(CueKind.USERINFO_PRESENT, p.userinfo)

    if p.scheme != "https":
        emit(CueKind.INSECURE_SCHEME, p.scheme)

    if len(p.subdomain_labels) >= cfg.max_subdomains:
        emit(CueKind.EXCESSIVE_SUBDOMAINS, ".".join(p.subdomain_labels))

    if p.registrable_domain and not lex.is_canonical(p.registrable_domain):
        folded = fold_confusables(p.registrable_domain)
        for canonical in lex.all_canonical_domains():
            if osa_distance(folded, fold_confusables(canonical)) <= 1:
                emit(CueKind.LOOKALIKE_DOMAIN, p.registrable_domain)
                break

    return cues


def _brand_outside_home(p: ParsedUrl, lex: "BrandLexicon") -> str | None:
    """Brand token in path/subdomains while the site is not that brand's."""
    path_lower = p.path.lower()
    for brand_id, token in lex.hyphen_tokens():
        brand = lex.get(brand_id)
        assert brand is not None
        if p.registrable_domain in brand.canonical_domains:
            continue
        idx = path_lower.find(token)
        if idx != -1:
            return p.path[idx:idx + len(token)]
        for label in p.subdomain_labels:
            if token in label:
                return token
    return None


def extract_email_cues(m: "EmailMessage", lex: "BrandLexicon", cfg: "CueConfig") -> list[Cue]:
    cues: list[Cue] = []

    def emit(kind: CueKind, evidence: str) -> None:
        cues.append(Cue(kind=kind, weight=cfg.weight_of(kind), evidence=evidence))

    if _is_generic_salutation(m.salutation, lex, cfg):
        emit(CueKind.GENERIC_SALUTATION, m.salutation)

    urgency = _find_urgency(m, cfg)
    if urgency:
        emit(CueKind.URGENT_REQUEST, urgency)

    if m.claimed_brand_logo is not None:
        brand = lex.get(m.claimed_brand_logo)
        if brand is not None:
            sender_host = m.sender_address.rsplit("@", 1)[-1]
            sender_reg = registrable_domain_of(sender_host, cfg.extra_suffixes)
            if sender_reg not in brand.canonical_domains:
                emit(CueKind.LOGO_SENDER_MISMATCH, m.sender_address)

    fake = _find_fake_link(m, cfg)
    if fake:
        emit(CueKind.FAKE_LINK, fake)

    for filename in m.attachments:
        if "." in filename:
            ext = filename.rsplit(".", 1)[1].lower()
            if ext in cfg.dangerous_extensions:
                emit(CueKind.SUSPICIOUS_ATTACHMENT, filename)
                break

    return cues


def _is_generic_salutation(salutation: str, lex: "BrandLexicon", cfg: "CueConfig") -> bool:
    normalized = " ".join(_WORDS_RE.findall(salutation.lower()))
    if not normalized:
        return False
    matched = ""
    for phrase in cfg.generic_salutations:
        if normalized == phrase or normalized.startswith(phrase + " "):
            if len(phrase) > len(matched):
                matched = phrase
    if not matched:
        return False
    remainder = normalized[len(matched):]
    # Strip brand names (multi-word first) so "dear customer of <brand>"
    # still counts as generic; anything else left over is a personal name.
    tokens = sorted(
        (token.lower() for brand in lex.brands for token in brand.name_tokens),
        key=len,
        reverse=True,
    )
    for token in tokens:
        remainder = remainder.replace(token, " ")
    leftover = [w for w in _WORDS_RE.findall(remainder) if w not in _CONNECTOR_WORDS]
    return not leftover


def _find_urgency(m: "EmailMessage", cfg: "CueConfig") -> str | None:
    for phrase in cfg.urgency_phrases:
        for text in (m.subject, m.body):
            idx = text.lower().find(phrase)
            if idx != -1:
                return text[idx:idx + len(phrase)]
    return None


def _find_fake_link(m: "EmailMessage", cfg: "CueConfig") -> str | None:
    for link in m.links:
        try:
            target_reg = parse_url(link.target_url, cfg.extra_suffixes).registrable_domain
        except MalformedUrl:
            target_reg = ""
        for fragment, registrable in find_domains(link.display_text, cfg.extra_suffixes):
            if registrable != target_reg:
                return fragment
    return None
