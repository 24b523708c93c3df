#include <doctest.h>

#include "gftk/funclang.hpp"
#include "test_util.hpp"

using namespace gftk;
using gftk_test::check_close;
using gftk_test::check_jet;

TEST_CASE("parse: grammar basics") {
    CHECK_NOTHROW(parse("z/(1-z)^2"));
    CHECK_NOTHROW(parse("-z-2*log(1-z)"));
    CHECK_NOTHROW(parse("((1+z)/(1-z))^(0.5)"));
    CHECK_NOTHROW(parse("z^-0.5"));

    try {
        parse("z/(1-");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 5);
    }
    CHECK_THROWS_AS(parse("z^z"), NonConstantExponent);
    CHECK_THROWS_AS(parse("sin(z)"), SyntaxError);
    CHECK_THROWS_AS(parse("(1+2)*"), SyntaxError);
}

TEST_CASE("parse: precedence and associativity") {
    // ^ binds tighter than unary minus
    check_close(ast_eval_value(parse("-z^2"), 3.0), -9.0, 1e-13);
    // right-associative ^ on constants: 2^(3^2) = 512, not 64
    check_close(ast_eval_value(parse("2^3^2"), 0.0), 512.0, 1e-12);
    check_close(ast_eval_value(parse("1-2i"), 0.0), cplx(1.0, -2.0), 0.0);
    check_close(ast_eval_value(parse("i"), 0.0), cplx(0.0, 1.0), 0.0);
    check_close(ast_eval_value(parse("sqrt(4)"), 0.0), 2.0, 1e-15);
}

TEST_CASE("pretty-print round trip evaluates identically") {
    const char* formulas[] = {"z/(1-z)^2", "-z-2*log(1-z)", "((1+z)/(1-z))^(1-0.5i)",
                              "exp(z*(0.25+0.125i))-1", "sqrt(1-z)*z-0.25i"};
    auto pts = gftk_test::random_disk_points(21, 20, 0.8);
    for (const char* f : formulas) {
        Ast a = parse(f);
        Ast b = parse(pretty_print(a));
        for (cplx z : pts) {
            const cplx va = ast_eval_value(a, z), vb = ast_eval_value(b, z);
            check_close(vb, va, 1e-13 * (1.0 + std::abs(va)));
        }
    }
}

TEST_CASE("expression jets match the value channel and finite differences") {
    Ast a = parse("z/(1-z)^2");
    auto pts = gftk_test::random_disk_points(31, 10, 0.8);
    for (cplx z : pts) {
        const Jet3 j = ast_eval_jet(a, z);
        check_close(j.f0, ast_eval_value(a, z), 1e-13);
        const double h = 1e-5;
        const cplx d1 = (ast_eval_value(a, z + h) - ast_eval_value(a, z - h)) / (2.0 * h);
        check_close(j.f1, d1, 1e-6 * (1.0 + std::abs(d1)));
    }
}

TEST_CASE("catalog jets at the origin") {
    check_jet(Func::compile(FunctionSpec::catalog("koebe")).jet(0.0), {0.0, 1.0, 4.0, 18.0}, 1e-14);
    check_jet(Func::compile(FunctionSpec::catalog("phi")).jet(0.0), {0.0, 1.0, 2.0, 4.0}, 1e-14);
    const Jet3 h = Func::compile(FunctionSpec::catalog("hille", {{"epsilon", 1.0}})).jet(0.0);
    check_close(h.f0, 1.0, 1e-14);
    check_close(h.f1, cplx(0.0, 2.0), 1e-13, "hille f'(0) = 2i");
    // q-dominant has a removable singularity at 0
    const Jet3 q = Func::compile(FunctionSpec::catalog("q-dominant")).jet(0.0);
    check_close(q.f0, 1.0, 1e-14);
    check_close(q.f1, 1.0, 1e-14);
}

TEST_CASE("catalog closed-form jets agree with their expression forms") {
    struct Pair {
        const char* name;
        const char* formula;
    } pairs[] = {{"koebe", "z/(1-z)^2"},
                 {"phi", "-z-2*log(1-z)"},
                 {"psi", "-z+2*log(1+z)"},
                 {"half-plane-cayley", "z/(1-z)"},
                 {"q-dominant", "(-z-2*log(1-z))/z"}};
    auto pts = gftk_test::random_disk_points(77, 25, 0.95);
    for (const auto& p : pairs) {
        Func cat = Func::compile(FunctionSpec::catalog(p.name));
        Ast ast = parse(p.formula);
        for (cplx z : pts) {
            if (std::abs(z) < 1e-3) continue;
            const Jet3 a = cat.jet(z);
            const Jet3 b = ast_eval_jet(ast, z);
            check_close(a.f0, b.f0, 1e-11 * (1.0 + std::abs(b.f0)), p.name);
            check_close(a.f1, b.f1, 1e-11 * (1.0 + std::abs(b.f1)), p.name);
            check_close(a.f2, b.f2, 1e-10 * (1.0 + std::abs(b.f2)), p.name);
            check_close(a.f3, b.f3, 1e-10 * (1.0 + std::abs(b.f3)), p.name);
        }
    }
}

TEST_CASE("catalog tags and lookups") {
    const CatalogEntry* phi = catalog_find("phi");
    REQUIRE(phi != nullptr);
    bool has_r = false;
    for (const auto& t : phi->tags) has_r = has_r || t == "class R";
    CHECK(has_r);

    const CatalogEntry* koebe = catalog_find("koebe");
    REQUIRE(koebe != nullptr);
    bool has_s = false, has_star = false;
    for (const auto& t : koebe->tags) {
        has_s = has_s || t == "class S";
        has_star = has_star || t == "starlike";
    }
    CHECK(has_s);
    CHECK(has_star);
    CHECK(catalog_find("royster") == nullptr);
    CHECK(catalog_list().size() == 8);
}

TEST_CASE("spiral-koebe(0) coincides with koebe") {
    Func sk = Func::compile(FunctionSpec::catalog("spiral-koebe", {{"lambda", 0.0}}));
    Func k = Func::compile(FunctionSpec::catalog("koebe"));
    for (cplx z : gftk_test::random_disk_points(5, 30, 0.97))
        check_close(sk.value(z), k.value(z), 1e-12 * (1.0 + std::abs(k.value(z))));
}

namespace {

// min over a dense grid of Re(e^{-i lambda} z f'(z)/f(z))
double min_spirallike_re(const Func& f, double lambda, int nr = 100, int na = 100) {
    double m = 1e300;
    const cplx rot = std::exp(cplx(0.0, -lambda));
    for (int j = 0; j < na; ++j) {
        for (int i = 0; i < nr; ++i) {
            const double r = 0.999 * (i + 1) / nr;
            const cplx z = std::polar(r, 2.0 * M_PI * j / na);
            const Jet3 jet = f.jet(z);
            m = std::min(m, (rot * (z * jet.f1 / jet.f0)).real());
        }
    }
    return m;
}

} // namespace

TEST_CASE("spiral-koebe(lambda) passes the numerical spirallikeness check") {
    for (double lam : {0.3, M_PI / 4, -0.6}) {
        Func f = Func::compile(FunctionSpec::catalog("spiral-koebe", {{"lambda", lam}}));
        CHECK(min_spirallike_re(f, lam) > 0.0);
    }
}

TEST_CASE("krzyz-lewandowski is spirallike with lambda = -pi/4") {
    // the catalog function z/(1-iz)^(1-i) satisfies the sector condition with
    // the negative angle under the orientation convention used here
    Func f = Func::compile(FunctionSpec::catalog("krzyz-lewandowski"));
    CHECK(min_spirallike_re(f, -M_PI / 4) > 0.0);
    CHECK(min_spirallike_re(f, M_PI / 4) < 0.0);
}

TEST_CASE("FunctionSpec JSON and CLI round trips") {
    FunctionSpec a = spec_from_json_text(R"({"kind":"catalog","name":"phi"})");
    CHECK(a.kind == SpecKind::Catalog);
    CHECK(a.name == "phi");

    FunctionSpec b = spec_from_json_text(R"({"kind":"expr","formula":"z/(1-z)^2"})");
    CHECK(b.kind == SpecKind::Expr);

    FunctionSpec c = spec_from_json_text(R"({"kind":"series","coeffs":[[0,0],[1,0],[2,0]]})");
    CHECK(c.kind == SpecKind::Series);
    CHECK(c.coeffs.size() == 3);

    FunctionSpec d = spec_from_cli("catalog:hille:epsilon=0.5");
    CHECK(d.params.at("epsilon") == cplx(0.5, 0.0));
    CHECK_THROWS_AS(spec_from_cli("catalog:nosuch"), ConfigError);
    CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"catalog","name":"nosuch"})"), ConfigError);

    // round trip through the JSON text form
    FunctionSpec e = spec_from_json_text(spec_to_json_text(d));
    CHECK(e.name == "hille");
    CHECK(e.params.at("epsilon") == cplx(0.5, 0.0));
}

TEST_CASE("parse_complex forms") {
    check_close(parse_complex("0.6+0.8i"), cplx(0.6, 0.8), 0.0);
    check_close(parse_complex("1-2i"), cplx(1.0, -2.0), 0.0);
    check_close(parse_complex("i"), cplx(0.0, 1.0), 0.0);
    check_close(parse_complex("-0.5i"), cplx(0.0, -0.5), 0.0);
    check_close(parse_complex("2.5e-1"), cplx(0.25, 0.0), 0.0);
}
