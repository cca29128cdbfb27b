"""File-level lexical metrics.

Seventeen token counters per source file. Counting rules:
  * comments never count;
  * NOTK/NOTKU cover every non-comment token;
  * NOASS counts assignment operators (= += -= ... >>>=), NOOP counts the
    remaining operator tokens;
  * NOREPR counts `return` keywords plus print-style calls (an identifier
    print/println/printf directly followed by '(');
  * NOCJST counts {if, case, while, for, do}; NOCUJST counts
    {break, continue, goto}; NOEXST counts {try, catch, finally, throw,
    throws};
  * NONEW and NOSUPER count their keywords.
"""

from dataclasses import dataclass, fields

from testlab.java.lexer import ASSIGNMENT_OPERATORS

PRINT_NAMES = frozenset({"print", "println", "printf"})
CONDITIONAL_JUMP_KEYWORDS = frozenset({"if", "case", "while", "for", "do"})
UNCONDITIONAL_JUMP_KEYWORDS = frozenset({"break", "continue", "goto"})
EXCEPTION_KEYWORDS = frozenset({"try", "catch", "finally", "throw", "throws"})

LEXICAL_METRIC_NAMES = [
    "NOTK", "NOTKU", "NOID", "NOIDU", "NOKW", "NOKWU", "NOASS", "NOOP",
    "NOOPU", "NOSC", "NODOT", "NOREPR", "NOCJST", "NOCUJST", "NOEXST",
    "NONEW", "NOSUPER",
]


@dataclass
class LexicalMetrics:
    NOTK: int = 0
    NOTKU: int = 0
    NOID: int = 0
    NOIDU: int = 0
    NOKW: int = 0
    NOKWU: int = 0
    NOASS: int = 0
    NOOP: int = 0
    NOOPU: int = 0
    NOSC: int = 0
    NODOT: int = 0
    NOREPR: int = 0
    NOCJST: int = 0
    NOCUJST: int = 0
    NOEXST: int = 0
    NONEW: int = 0
    NOSUPER: int = 0

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def compute_lexical_metrics(stream):
    """Populate the 17 counters from a token stream."""
    toks = stream.significant()
    m = LexicalMetrics()
    texts = set()
    ident_texts = set()
    keyword_texts = set()
    op_texts = set()
    for i, t in enumerate(toks):
        m.NOTK += 1
        texts.add(t.text)
        if t.kind == "identifier":
            m.NOID += 1
            ident_texts.add(t.text)
            if t.text in PRINT_NAMES:
                nxt = toks[i + 1] if i + 1 < len(toks) else None
                if nxt is not None and nxt.text == "(":
                    m.NOREPR += 1
        elif t.kind == "keyword":
            m.NOKW += 1
            keyword_texts.add(t.text)
            if t.text == "return":
                m.NOREPR += 1
            if t.text in CONDITIONAL_JUMP_KEYWORDS:
                m.NOCJST += 1
            if t.text in UNCONDITIONAL_JUMP_KEYWORDS:
                m.NOCUJST += 1
            if t.text in EXCEPTION_KEYWORDS:
                m.NOEXST += 1
            if t.text == "new":
                m.NONEW += 1
            if t.text == "super":
                m.NOSUPER += 1
        elif t.kind == "operator":
            if t.text in ASSIGNMENT_OPERATORS:
                m.NOASS += 1
            else:
                m.NOOP += 1
                op_texts.add(t.text)
        elif t.kind == "separator":
            if t.text == ";":
                m.NOSC += 1
            elif t.text == ".":
                m.NODOT += 1
    m.NOTKU = len(texts)
    m.NOIDU = len(ident_texts)
    m.NOKWU = len(keyword_texts)
    m.NOOPU = len(op_texts)
    return m
