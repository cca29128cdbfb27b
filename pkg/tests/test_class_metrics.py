from testlab.java import parse_compilation_unit, tokenize
from testlab.metrics.classes import analyze_project, build_project_index, compute_class_metrics


def project_metrics(sources):
    units = []
    for name, src in sources.items():
        units.append((name, parse_compilation_unit(tokenize(src))))
    index = build_project_index(units)
    analyses = analyze_project(index)
    return {q: compute_class_metrics(q, analyses) for q in analyses}, analyses


def test_visibility_counts_follow_modifiers():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            public int f() { return 1; }
            public int g() { return 2; }
            private int h() { return 3; }
            protected int i() { return 4; }
            int j() { return 5; }
        }
        """
    })
    m = metrics["p.A"]
    assert m["CSNOPLM"] == 2   # public
    assert m["CSNOPM"] == 1    # private
    assert m["CSNOPRM"] == 1   # protected
    assert m["CSNODM"] == 1    # package-private
    assert m["CSNOM"] == 5


def test_inheritance_free_class():
    metrics, _ = project_metrics({
        "A.java": "package p; class A { void f() { } }",
    })
    m = metrics["p.A"]
    assert m["CSDIT"] == 0
    assert m["CSNOP"] == 0
    assert m["CSNOC"] == 0


def test_coupling_three_distinct_classes():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            void f() {
                B b = new B();
                b.run();
                C.helper();
                D d = new D();
                d.go();
            }
        }
        """,
        "B.java": "package p; class B { void run() { } }",
        "C.java": "package p; class C { static void helper() { } }",
        "D.java": "package p; class D { void go() { } }",
    })
    m = metrics["p.A"]
    assert m["CSCBO"] == 3
    assert m["CSFANOUT"] == 3
    assert metrics["p.B"]["CSFANIN"] == 1
    assert metrics["p.B"]["CSDEPENDSBY"] == 1


def test_depends_counts_unresolved_externals():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        import java.util.List;
        class A {
            List items;
            B b;
            void f(String s) { }
        }
        """,
        "B.java": "package p; class B { }",
    })
    m = metrics["p.A"]
    # B resolves in-project; List and String stay external
    assert m["CSCBO"] == 1
    assert m["CSDAC"] == 1
    assert m["CSDEPENDS"] == 3


def test_import_resolution_beats_wildcard():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        import q.Target;
        class A { Target t; }
        """,
        "Target.java": "package q; public class Target { }",
        "Other.java": "package r; public class Target { }",
    })
    assert metrics["p.A"]["CSCBO"] == 1


def test_inheritance_chain_dit_nim_nmo():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            public void base() { }
            public void shared() { }
            private void hidden() { }
        }
        """,
        "B.java": """
        package p;
        class B extends A {
            public void shared() { }
            public void extra() { }
        }
        """,
        "C.java": "package p; class C extends B { }",
    })
    assert metrics["p.B"]["CSDIT"] == 1
    assert metrics["p.C"]["CSDIT"] == 2
    assert metrics["p.A"]["CSNOC"] == 1
    assert metrics["p.B"]["CSNMO"] == 1        # shared overrides A.shared
    assert metrics["p.B"]["CSNIM"] == 1        # base inherited; hidden private
    assert metrics["p.C"]["CSNIM"] == 3        # shared, extra from B; base from A


def test_lcom1_counts_disjoint_pairs():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            int a; int b;
            void f() { a = 1; }
            void g() { a = 2; }
            void h() { b = 3; }
        }
        """
    })
    # pairs: (f,g) share a; (f,h) and (g,h) share nothing
    assert metrics["p.A"]["CSLOCM"] == 2


def test_atfd_via_accessor_and_direct_field():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            int total(B b) { return b.getV() + b.w; }
        }
        """,
        "B.java": """
        package p;
        class B {
            int v; int w;
            int getV() { return v; }
        }
        """,
    })
    assert metrics["p.A"]["CSATFD"] == 2
    assert metrics["p.A"]["CSCFNAMM"] == 0


def test_rfc_and_nomcall():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            void f(B b) { b.go(); b.go(); helper(); }
            void helper() { }
        }
        """,
        "B.java": "package p; class B { void go() { } }",
    })
    m = metrics["p.A"]
    assert m["CSNOMCALL"] == 3
    # RFC = NOM(2) + distinct invoked {B.go, A.helper}
    assert m["CSRFC"] == 4


def test_static_and_instance_partitions():
    metrics, _ = project_metrics({
        "A.java": """
        package p;
        class A {
            static int sa;
            int ia1; int ia2;
            static void sm() { }
            void im() { }
            A() { }
        }
        """
    })
    m = metrics["p.A"]
    assert m["CSNOSM"] == 1
    assert m["CSNOIM"] == 1
    assert m["CSNOSA"] == 1
    assert m["CSNOIA"] == 2
    assert m["CSNOCON"] == 1
    assert m["CSNOM"] == 2


def test_interface_counts_as_implemented():
    metrics, _ = project_metrics({
        "I.java": "package p; interface I { void run(); }",
        "A.java": "package p; class A implements I { public void run() { } }",
    })
    assert metrics["p.A"]["CSNOII"] == 1
    assert metrics["p.A"]["CSNOP"] == 1
