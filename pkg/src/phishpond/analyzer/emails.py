"""Email message model used by the cue extractor and the corpus."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EmailLink:
    display_text: str
    target_url: str


@dataclass(frozen=True)
class EmailMessage:
    sender_display: str
    sender_address: str
    subject: str
    body: str
    salutation: str = ""
    links: tuple[EmailLink, ...] = ()
    attachments: tuple[str, ...] = ()
    claimed_brand_logo: str | None = None

    def __post_init__(self):
        if not self.salutation:
            object.__setattr__(self, "salutation", first_line(self.body))

    def to_dict(self) -> dict:
        data = {
            "sender_display": self.sender_display,
            "sender_address": self.sender_address,
            "subject": self.subject,
            "salutation": self.salutation,
            "body": self.body,
            "links": [{"display_text": l.display_text, "target_url": l.target_url} for l in self.links],
            "attachments": [{"filename": name} for name in self.attachments],
        }
        if self.claimed_brand_logo is not None:
            data["claimed_brand_logo"] = self.claimed_brand_logo
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "EmailMessage":
        return cls(
            sender_display=data.get("sender_display", ""),
            sender_address=data.get("sender_address", ""),
            subject=data.get("subject", ""),
            body=data.get("body", ""),
            salutation=data.get("salutation", ""),
            links=tuple(
                EmailLink(link["display_text"], link["target_url"])
                for link in data.get("links", [])
            ),
            attachments=tuple(att["filename"] for att in data.get("attachments", [])),
            claimed_brand_logo=data.get("claimed_brand_logo"),
        )


def first_line(body: str) -> str:
    """First non-blank line of a body; the salutation by convention."""
    for line in body.splitlines():
        line = line.strip()
        if line:
            return line
    return ""
