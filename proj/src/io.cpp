#include "hnspec/io.hpp"

#include <string>

#include "hnspec/errors.hpp"

namespace hnspec {

namespace {

template <class T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad field '") + key + "': " + e.what());
    }
}

template <class T>
T fieldOr(const Json& j, const char* key, T dflt)
{
    if (!j.is_object() || !j.contains(key)) return dflt;
    return field<T>(j, key);
}

}  // namespace

Json toJson(const BoundaryFunction& f)
{
    if (f.isDirichlet()) return Json{{"type", "dirichlet"}};
    return Json{{"h0", f.h0()}, {"h", f.h()}, {"poles", f.poles()}, {"residues", f.residues()}};
}

BoundaryFunction boundaryFromJson(const Json& j)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "dirichlet") return BoundaryFunction::dirichlet();
        throw ValidationError("boundary function: unknown marker '" + s + "'");
    }
    if (j.is_number()) return BoundaryFunction::constant(j.get<double>());
    if (!j.is_object()) throw ValidationError("boundary function: expected an object");
    if (j.contains("type")) {
        std::string t = field<std::string>(j, "type");
        if (t == "dirichlet") return BoundaryFunction::dirichlet();
        if (t != "rational") throw ValidationError("boundary function: unknown type '" + t + "'");
    }
    return BoundaryFunction::make(fieldOr<double>(j, "h0", 0.0), fieldOr<double>(j, "h", 0.0),
                                  fieldOr<std::vector<double>>(j, "poles", {}),
                                  fieldOr<std::vector<double>>(j, "residues", {}));
}

Json toJson(const Potential& q)
{
    if (auto e = dynamic_cast<const ExprPotential*>(&q)) {
        switch (e->name()) {
            case ExprPotential::Name::Zero: return Json{{"type", "expr"}, {"name", "zero"}};
            case ExprPotential::Name::Constant: return Json{{"type", "expr"}, {"name", "constant"}, {"c", e->offset()}};
            case ExprPotential::Name::Cos:
                return Json{{"type", "expr"},      {"name", "cos"},      {"amplitude", e->amplitude()},
                            {"k", e->wave()}, {"phase", e->phase()}, {"offset", e->offset()}};
        }
    }
    if (auto s = dynamic_cast<const SampledPotential*>(&q))
        return Json{{"type", "samples"}, {"grid", s->grid()}, {"values", s->values()}};
    if (auto l = dynamic_cast<const DarbouxLayer*>(&q))
        return Json{{"type", "layer"}, {"Lambda", l->lambda()}, {"w", l->w()}, {"base", toJson(*l->base())}};
    throw ValidationError("potential of kind '" + q.kind() + "' is not serializable");
}

PotentialPtr potentialFromJson(const Json& j)
{
    std::string t = field<std::string>(j, "type");
    if (t == "expr") {
        std::string n = field<std::string>(j, "name");
        if (n == "zero") return ExprPotential::zero();
        if (n == "constant") return ExprPotential::constant(field<double>(j, "c"));
        if (n == "cos")
            return ExprPotential::cosine(fieldOr<double>(j, "amplitude", 1.0), fieldOr<double>(j, "k", 1.0),
                                         fieldOr<double>(j, "phase", 0.0), fieldOr<double>(j, "offset", 0.0));
        throw ValidationError("potential: unknown built-in '" + n + "'");
    }
    if (t == "samples")
        return std::make_shared<SampledPotential>(field<std::vector<double>>(j, "grid"),
                                                  field<std::vector<double>>(j, "values"));
    if (t == "layer") {
        if (!j.contains("base")) throw ValidationError("layer: missing base");
        return std::make_shared<DarbouxLayer>(potentialFromJson(j.at("base")), field<double>(j, "Lambda"),
                                              field<std::vector<double>>(j, "w"));
    }
    throw ValidationError("potential: unknown type '" + t + "'");
}

Json toJson(const Problem& p) { return Json{{"q", toJson(*p.q)}, {"f", toJson(p.f)}, {"F", toJson(p.F)}}; }

Problem problemFromJson(const Json& j)
{
    if (!j.is_object()) throw ValidationError("problem: expected an object");
    for (const char* k : {"q", "f", "F"})
        if (!j.contains(k)) throw ValidationError(std::string("problem: missing '") + k + "'");
    return Problem{potentialFromJson(j.at("q")), boundaryFromJson(j.at("f")), boundaryFromJson(j.at("F"))};
}

Json toJson(const SpectralData& d)
{
    Json e = Json::array();
    for (const auto& [l, g] : d.entries) e.push_back({l, g});
    return Json{{"M", d.M}, {"N", d.N}, {"entries", e}};
}

SpectralData spectralDataFromJson(const Json& j)
{
    SpectralData d;
    d.M = field<int>(j, "M");
    d.N = field<int>(j, "N");
    auto e = field<std::vector<std::vector<double>>>(j, "entries");
    for (const auto& row : e) {
        if (row.size() != 2) throw ValidationError("spectral data: entries must be [lambda, gamma] pairs");
        d.entries.emplace_back(row[0], row[1]);
    }
    return d;
}

Json toJson(const TransformRecord& r)
{
    return Json{{"Lambda", r.Lambda}, {"I", r.I},           {"J", r.J},          {"tau0", r.tau0},
                {"tauPi", r.tauPi},   {"lambda0", r.lambda0}, {"gamma0", r.gamma0},
                {"grid_intervals", r.layer ? r.layer->intervals() : 0}};
}

Json toJson(const DescentStep& s)
{
    return Json{{"M", s.M}, {"N", s.N}, {"mu", s.mu}, {"nu", s.nu}, {"Lambda", s.Lambda}, {"I", s.I}, {"J", s.J}};
}

Json toJson(const TraceEstimate& t)
{
    return Json{{"value", t.value}, {"error_bar", t.errorBar}, {"terms", t.terms}, {"converged", t.converged}};
}

Json toJson(const AsymptoticFit& a)
{
    return Json{{"sigma_hat", a.sigmaHat},
                {"sigma_error", a.sigmaError},
                {"max_scaled_residual", a.maxScaledResidual},
                {"gamma_exponent_hat", a.gammaExponentHat},
                {"gamma_exponent", a.gammaExponentRounded},
                {"gamma_scale_hat", a.gammaScaleHat},
                {"window", {a.first, a.last}}};
}

}  // namespace hnspec
