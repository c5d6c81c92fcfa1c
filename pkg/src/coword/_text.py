from __future__ import annotations

import os
import unicodedata
from functools import lru_cache

from .errors import InputError


def decode_utf8(data: bytes | str, what: str = "input", error=InputError) -> str:
    """Decode UTF-8 bytes (BOM stripped) and NFC-normalize the result."""
    if isinstance(data, str):
        text = data.lstrip("﻿")
    else:
        data = bytes(data)
        skip = 3 if data.startswith(b"\xef\xbb\xbf") else 0
        try:
            text = data[skip:].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise error(
                f"{what}: invalid UTF-8 at byte offset {exc.start + skip}"
            ) from None
    return unicodedata.normalize("NFC", text)


def read_source(source, what: str = "input", error=InputError) -> str:
    """Return NFC text from a ``pathlib.Path``, raw bytes, text, or a file object.

    A plain ``str`` is taken as the content itself, never as a filename.
    """
    if isinstance(source, (str, bytes, bytearray)):
        return decode_utf8(source, what, error)
    if isinstance(source, os.PathLike):
        try:
            with open(source, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise error(f"{what}: cannot read {os.fspath(source)}: {exc.strerror}") from None
        return decode_utf8(data, f"{what} {os.fspath(source)}", error)
    return decode_utf8(source.read(), what, error)


HAN = "han"
LETTER = "letter"
DIGIT = "digit"
DELIM = "delim"


@lru_cache(maxsize=65536)
def char_kind(ch: str) -> str:
    """Classify one character as han, letter, digit or delimiter.

    Whitespace, punctuation (P*), symbols (S*), separators (Z*) and
    control/format/unassigned code points (C*) are delimiters.
    """
    if ch.isspace():
        return DELIM
    cat = unicodedata.category(ch)
    major = cat[0]
    if major in "PSZC":
        return DELIM
    if major == "N":
        return DIGIT
    if major == "L" and unicodedata.name(ch, "").startswith(
        ("CJK UNIFIED IDEOGRAPH", "CJK COMPATIBILITY IDEOGRAPH")
    ):
        return HAN
    return LETTER


def is_han(ch: str) -> bool:
    return char_kind(ch) == HAN
