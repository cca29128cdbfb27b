"""Java lexer.

Classifies tokens into six kinds: identifier, keyword, operator,
separator, literal, comment. Comments are kept in the stream but every
metric downstream ignores them. Token positions are byte-accurate so the
original file can be reconstructed from tokens plus whitespace.
"""

from dataclasses import dataclass

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const
    continue default do double else enum extends final finally float for
    goto if implements import instanceof int interface long native new
    package private protected public return short static strictfp super
    switch synchronized this throw throws transient try void volatile
    while""".split()
)

# true/false/null are literals per the language grammar, not keywords.
WORD_LITERALS = frozenset({"true", "false", "null"})

# Multi-character operators, longest first so maximal munch works.
OPERATORS = [
    ">>>=", "<<=", ">>=", ">>>",
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=",
    "/=", "&=", "|=", "^=", "%=", "<<", ">>", "->",
    "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|",
    "^", "%",
]

ASSIGNMENT_OPERATORS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<=", ">>=", ">>>="}
)

SEPARATORS = ["...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@"]


class LexError(Exception):
    """Raised on malformed input; carries the offending position."""

    def __init__(self, line, column, reason):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


@dataclass(frozen=True)
class Token:
    kind: str  # identifier | keyword | operator | separator | literal | comment
    text: str
    line: int
    column: int
    offset: int


class TokenStream:
    """Ordered tokens of one source file."""

    def __init__(self, tokens, source):
        self.tokens = tokens
        self.source = source

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def significant(self):
        """Tokens that metrics count: everything except comments."""
        return [t for t in self.tokens if t.kind != "comment"]


def _is_ident_start(ch):
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch):
    return ch.isalnum() or ch in "_$"


def tokenize(source_text):
    """Tokenize Java source text into a TokenStream.

    Raises LexError for unterminated strings, chars, comments, or any
    character outside the supported grammar.
    """
    tokens = []
    i = 0
    n = len(source_text)
    line = 1
    col = 1

    def advance(text):
        nonlocal i, line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += len(text)

    def emit(kind, text):
        tokens.append(Token(kind, text, line, col, i))
        advance(text)

    while i < n:
        ch = source_text[i]
        if ch in " \t\r\n\f\x0b":
            advance(ch)
            continue
        if ch == "/" and i + 1 < n:
            nxt = source_text[i + 1]
            if nxt == "/":
                end = source_text.find("\n", i)
                if end == -1:
                    end = n
                emit("comment", source_text[i:end])
                continue
            if nxt == "*":
                end = source_text.find("*/", i + 2)
                if end == -1:
                    raise LexError(line, col, "unterminated block comment")
                emit("comment", source_text[i : end + 2])
                continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_part(source_text[j]):
                j += 1
            word = source_text[i:j]
            if word in KEYWORDS:
                emit("keyword", word)
            elif word in WORD_LITERALS:
                emit("literal", word)
            else:
                emit("identifier", word)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source_text[i + 1].isdigit()):
            emit("literal", _scan_number(source_text, i))
            continue
        if ch == '"':
            emit("literal", _scan_string(source_text, i, line, col))
            continue
        if ch == "'":
            emit("literal", _scan_char(source_text, i, line, col))
            continue
        sep = _match_any(source_text, i, SEPARATORS)
        op = _match_any(source_text, i, OPERATORS)
        # '...' and '::' start with characters that are also operators, so
        # prefer the longer separator match.
        if sep is not None and (op is None or len(sep) >= len(op)):
            emit("separator", sep)
            continue
        if op is not None:
            emit("operator", op)
            continue
        raise LexError(line, col, f"unexpected character {ch!r}")

    return TokenStream(tokens, source_text)


def _match_any(text, i, candidates):
    for cand in candidates:
        if text.startswith(cand, i):
            return cand
    return None


def _scan_number(text, i):
    n = len(text)
    j = i
    if text.startswith(("0x", "0X"), i):
        j = i + 2
        while j < n and (text[j] in "0123456789abcdefABCDEF_"):
            j += 1
        # hexadecimal floating point: 0x1.8p3
        if j < n and text[j] == ".":
            j += 1
            while j < n and text[j] in "0123456789abcdefABCDEF_":
                j += 1
        if j < n and text[j] in "pP":
            j += 1
            if j < n and text[j] in "+-":
                j += 1
            while j < n and (text[j].isdigit() or text[j] == "_"):
                j += 1
        if j < n and text[j] in "lL":
            j += 1
        return text[i:j]
    if text.startswith(("0b", "0B"), i):
        j = i + 2
        while j < n and text[j] in "01_":
            j += 1
        if j < n and text[j] in "lL":
            j += 1
        return text[i:j]
    while j < n and (text[j].isdigit() or text[j] == "_"):
        j += 1
    if j < n and text[j] == "." and not text.startswith("..", j):
        j += 1
        while j < n and (text[j].isdigit() or text[j] == "_"):
            j += 1
    if j < n and text[j] in "eE":
        k = j + 1
        if k < n and text[k] in "+-":
            k += 1
        if k < n and text[k].isdigit():
            j = k
            while j < n and (text[j].isdigit() or text[j] == "_"):
                j += 1
    if j < n and text[j] in "fFdDlL":
        j += 1
    return text[i:j]


def _scan_string(text, i, line, col):
    n = len(text)
    if text.startswith('"""', i):
        end = text.find('"""', i + 3)
        if end == -1:
            raise LexError(line, col, "unterminated text block")
        return text[i : end + 3]
    j = i + 1
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == '"':
            return text[i : j + 1]
        if ch == "\n":
            break
        j += 1
    raise LexError(line, col, "unterminated string literal")


def _scan_char(text, i, line, col):
    n = len(text)
    j = i + 1
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == "'":
            return text[i : j + 1]
        if ch == "\n":
            break
        j += 1
    raise LexError(line, col, "unterminated character literal")
