#ifndef GFTK_FUNCLANG_HPP
#define GFTK_FUNCLANG_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gftk/jet.hpp"
#include "gftk/power_series.hpp"

namespace gftk {

// ---------------------------------------------------------------------------
// Expression AST: variable z, complex literals, unary minus, + - * / ^,
// calls log/exp/sqrt. Exponents of ^ must be constant (no z).
// ---------------------------------------------------------------------------
struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

struct AstNode {
    enum class Kind { Var, Lit, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind;
    cplx lit{};        // Kind::Lit
    std::string call;  // Kind::Call: "log" | "exp" | "sqrt"
    AstPtr a, b;
};

struct Ast {
    AstPtr root;
};

Ast parse(const std::string& formula);
std::string pretty_print(const Ast& ast);
bool ast_contains_var(const AstPtr& n);

cplx ast_eval_value(const Ast& ast, cplx z);
Jet3 ast_eval_jet(const Ast& ast, cplx z);
PowerSeries ast_eval_series(const Ast& ast, int order);

// "a+bi" | "a" | "bi" | "i"; used for CLI arguments and catalog parameters.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx v);

// ---------------------------------------------------------------------------
// FunctionSpec: catalog name + params | expression text | explicit series.
// ---------------------------------------------------------------------------
enum class SpecKind { Catalog, Expr, Series };

struct FunctionSpec {
    SpecKind kind = SpecKind::Expr;
    std::string name;                   // catalog
    std::map<std::string, cplx> params; // catalog
    std::string formula;                // expr
    std::vector<cplx> coeffs;           // series

    static FunctionSpec catalog(std::string name, std::map<std::string, cplx> params = {});
    static FunctionSpec expr(std::string formula);
    static FunctionSpec series(std::vector<cplx> coeffs);
};

// JSON wire format:
//   {"kind":"catalog","name":"phi"}  (+ optional "params":{"epsilon":[1,0]})
//   {"kind":"expr","formula":"z/(1-z)^2"}
//   {"kind":"series","coeffs":[[0,0],[1,0],[2,0]]}
FunctionSpec spec_from_json_text(const std::string& json_text);
std::string spec_to_json_text(const FunctionSpec& spec);
// CLI shorthand: catalog:NAME[:k=v[,k=v]] | expr:FORMULA | series:JSONARRAY | file:PATH
FunctionSpec spec_from_cli(const std::string& text);

struct CatalogEntry {
    std::string name;
    std::string formula; // display form
    std::vector<std::string> param_names;
    std::vector<std::string> tags; // class-membership tags
    std::function<Jet3(cplx, const std::map<std::string, cplx>&)> jet;
    std::function<PowerSeries(int, const std::map<std::string, cplx>&)> series;
};

const std::vector<CatalogEntry>& catalog_list();
const CatalogEntry* catalog_find(const std::string& name);

// Compiled evaluator. Series evaluation of the Series kind (and of series())
// is trusted for |z| <= 0.9; catalog/expr jets use closed forms valid on the
// closed disk away from their singularities.
class Func {
  public:
    Func() = default;
    static Func compile(const FunctionSpec& spec);

    Jet3 jet(cplx z) const;
    cplx value(cplx z) const;
    PowerSeries series(int order) const;
    const FunctionSpec& spec() const { return spec_; }

  private:
    FunctionSpec spec_;
    Ast ast_; // Expr kind
    PowerSeries poly_; // Series kind
    const CatalogEntry* entry_ = nullptr;
};

} // namespace gftk

#endif
