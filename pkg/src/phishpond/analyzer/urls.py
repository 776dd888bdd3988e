"""URL splitting and registrable-domain extraction.

The grammar handled here is deliberately small: ``scheme "://" [userinfo
"@"] host ["/" path] ["?" query]``. Hosts are either a dotted-quad IPv4
address or a domain name; ports, fragments, and non-ASCII hosts are
rejected. Registrable domains ("hsbc.co.uk") come from a small embedded
suffix table, extendable via configuration, never from the network.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class MalformedUrl(ValueError):
    """Raised when text cannot be split by the URL grammar."""


class HostKind(Enum):
    IP_ADDRESS = "ip_address"
    DOMAIN_NAME = "domain_name"


# Suffixes the game content relies on; config may extend this set.
DEFAULT_SUFFIXES: tuple[str, ...] = ("com", "org", "net", "gov", "edu", "co.uk", "ac.uk")

_SCHEME_RE = re.compile(r"^[a-z][a-z0-9+.-]*$")
_LABEL_RE = re.compile(r"^[a-z0-9_-]+$")


@dataclass(frozen=True)
class ParsedUrl:
    scheme: str
    userinfo: str | None
    host: str
    host_kind: HostKind
    subdomain_labels: tuple[str, ...]
    registrable_domain: str
    path: str
    query: str

    def unparse(self) -> str:
        """Normalized form: lowercased scheme/host, path/query preserved."""
        auth = f"{self.userinfo}@" if self.userinfo is not None else ""
        q = f"?{self.query}" if self.query else ""
        return f"{self.scheme}://{auth}{self.host}{self.path}{q}"


def is_ipv4(host: str) -> bool:
    """True for exactly four dot-separated decimal octets in 0..255."""
    labels = host.split(".")
    if len(labels) != 4:
        return False
    for label in labels:
        if not label.isdigit() or len(label) > 3:
            return False
        if int(label) > 255:
            return False
    return True


def split_registrable(host: str, extra_suffixes: Iterable[str] = ()) -> tuple[tuple[str, ...], str]:
    """Split a domain-name host into (subdomain labels, registrable domain).

    Longest matching suffix wins; a host with no known suffix falls back
    to treating its last label as the suffix. A host that *is* a suffix
    (or a single label) is its own registrable domain.
    """
    labels = host.split(".")
    suffixes = set(DEFAULT_SUFFIXES) | {s.lower().strip(".") for s in extra_suffixes}
    best = 0
    for suffix in suffixes:
        parts = suffix.split(".")
        if len(parts) < len(labels) and labels[-len(parts):] == parts:
            best = max(best, len(parts))
    if best == 0:
        if len(labels) == 1:
            return (), host
        best = 1
    keep = best + 1
    return tuple(labels[:-keep]), ".".join(labels[-keep:])


def registrable_domain_of(host: str, extra_suffixes: Iterable[str] = ()) -> str:
    """Registrable domain for a bare host; empty string for IPv4 hosts."""
    host = host.lower()
    if is_ipv4(host):
        return ""
    return split_registrable(host, extra_suffixes)[1]


def parse_url(raw: str, extra_suffixes: Iterable[str] = ()) -> ParsedUrl:
    """Split ``raw`` into components per the grammar in the module docstring.

    Raises MalformedUrl when there is no ``://`` separator, the host is
    empty, or the host contains characters outside domain labels /
    dotted-quad digits.
    """
    if not raw:
        raise MalformedUrl("empty input")
    sep = raw.find("://")
    if sep <= 0:
        raise MalformedUrl("no scheme separator")
    scheme = raw[:sep].lower()
    if not _SCHEME_RE.match(scheme):
        raise MalformedUrl(f"invalid scheme {raw[:sep]!r}")

    rest = raw[sep + 3:]
    cut = len(rest)
    for ch in "/?":
        pos = rest.find(ch)
        if pos != -1:
            cut = min(cut, pos)
    authority, tail = rest[:cut], rest[cut:]

    userinfo: str | None = None
    host_raw = authority
    if "@" in authority:
        userinfo, host_raw = authority.rsplit("@", 1)
    host = host_raw.lower()
    if not host:
        raise MalformedUrl("empty host")
    if not host.isascii():
        raise MalformedUrl("non-ASCII host")

    if is_ipv4(host):
        kind = HostKind.IP_ADDRESS
        subdomains: tuple[str, ...] = ()
        registrable = ""
    else:
        for label in host.split("."):
            if not label or not _LABEL_RE.match(label):
                raise MalformedUrl(f"invalid host label {label!r}")
        kind = HostKind.DOMAIN_NAME
        subdomains, registrable = split_registrable(host, extra_suffixes)

    if tail.startswith("?"):
        path, query = "", tail[1:]
    elif "?" in tail:
        qpos = tail.find("?")
        path, query = tail[:qpos], tail[qpos + 1:]
    else:
        path, query = tail, ""

    return ParsedUrl(
        scheme=scheme,
        userinfo=userinfo,
        host=host,
        host_kind=kind,
        subdomain_labels=subdomains,
        registrable_domain=registrable,
        path=path,
        query=query,
    )
