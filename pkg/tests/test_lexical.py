from testlab.java.lexer import tokenize
from testlab.metrics.lexical import LEXICAL_METRIC_NAMES, compute_lexical_metrics


def lex(src):
    return compute_lexical_metrics(tokenize(src))


def test_assignment_and_identifier_counts():
    m = lex("a = b; c = d;")
    assert m.NOASS == 2
    assert m.NOSC == 2
    assert m.NOID == 4
    assert m.NOIDU == 4


def test_empty_stream_all_zero():
    m = lex("")
    assert all(getattr(m, name) == 0 for name in LEXICAL_METRIC_NAMES)


def test_return_and_print_statements():
    m = lex("return x; System.out.print(y);")
    assert m.NOREPR == 2
    assert m.NODOT == 2


def test_uniqueness_bounds():
    m = lex("int a = 1; int b = a + a; if (a > b) { return; }")
    assert m.NOTKU <= m.NOTK
    assert m.NOIDU <= m.NOID
    assert m.NOKWU <= m.NOKW
    assert m.NOOPU <= m.NOOP


def test_keyword_bucket_counters():
    src = """
    class A {
        void f() {
            try {
                for (int i = 0; i < 3; i++) {
                    if (i == 1) break;
                    while (false) continue;
                }
            } catch (Exception e) {
                throw new RuntimeException(e);
            } finally {
                super.toString();
            }
        }
    }
    """
    m = lex(src)
    assert m.NOCJST == 3  # for + if + while
    assert m.NOCUJST == 2  # break + continue
    assert m.NOEXST == 4  # try + catch + throw + finally
    assert m.NONEW == 1
    assert m.NOSUPER == 1


def test_comments_never_count():
    m1 = lex("int x = 1; // trailing note\n/* block */")
    m2 = lex("int x = 1;")
    assert m1.as_dict() == m2.as_dict()


def test_subadditivity_at_class_boundary():
    part1 = "class A { int f() { return 1; } }\n"
    part2 = "class B { int g() { return 2; } }\n"
    whole = part1 + part2
    m1, m2, mw = lex(part1), lex(part2), lex(whole)
    for name in LEXICAL_METRIC_NAMES:
        if name.endswith("U"):
            continue  # uniqueness counters are not additive
        assert getattr(mw, name) == getattr(m1, name) + getattr(m2, name), name
    assert mw.NOTK == m1.NOTK + m2.NOTK


def test_alpha_renaming_preserves_counts():
    src = "class A { int count; int get() { return count + count; } }"
    renamed = src.replace("count", "zz91").replace("get", "qq42").replace("A", "Zed")
    m1, m2 = lex(src), lex(renamed)
    assert m1.as_dict() == m2.as_dict()
