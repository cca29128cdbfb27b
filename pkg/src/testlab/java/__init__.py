"""Java source handling: lexer and a metrics-oriented parser."""

from testlab.java.lexer import LexError, Token, TokenStream, tokenize
from testlab.java.parser import ParseError, parse_compilation_unit

__all__ = [
    "LexError",
    "Token",
    "TokenStream",
    "tokenize",
    "ParseError",
    "parse_compilation_unit",
]
