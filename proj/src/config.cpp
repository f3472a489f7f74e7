#include "greenfn/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace greenfn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

Complex parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    fail(where, "expected a number or [re, im] pair");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Point parse_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || j.size() > 2) fail(where, "expected [x] or [x, y]");
    if (j.size() == 1) return Point(j[0].get<double>());
    return Point(j[0].get<double>(), j[1].get<double>());
}

std::vector<Point> parse_points(const json& j, const std::string& where) {
    std::vector<Point> pts;
    if (!j.is_array()) fail(where, "expected a list of points");
    for (size_t i = 0; i < j.size(); ++i)
        pts.push_back(parse_point(j[i], where + "[" + std::to_string(i) + "]"));
    return pts;
}

OperatorSpec parse_operator(const json& j) {
    if (!j.contains("type")) fail("operator", "missing type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "helmholtz1d") {
        if (!j.contains("k")) fail("operator", "helmholtz1d needs k");
        return OperatorSpec::helmholtz1d(parse_complex(j.at("k"), "operator.k"));
    }
    if (type == "modified_helmholtz1d") {
        if (!j.contains("kappa")) fail("operator", "modified_helmholtz1d needs kappa");
        return OperatorSpec::modified_helmholtz1d(j.at("kappa").get<double>());
    }
    if (type == "laplace2d") return OperatorSpec::laplace2d();
    if (type == "helmholtz2d") {
        OperatorSpec s;
        s.type = OperatorSpec::Type::helmholtz2d;
        if (j.contains("k")) s.k = parse_complex(j.at("k"), "operator.k");
        return s;  // rejected later by the fundamental-solution constructor
    }
    fail("operator.type", "unknown type '" + type + "'");
}

Domain parse_domain(const json& j) {
    if (!j.contains("type")) fail("domain", "missing type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "interval")
        return Domain::interval(j.at("a").get<double>(), j.at("b").get<double>());
    if (type == "circle") {
        const Point c = j.contains("center") ? parse_point(j.at("center"), "domain.center")
                                             : Point(0.0, 0.0);
        return Domain::closed_curve(CurveSpec::circle(c, j.at("radius").get<double>()));
    }
    if (type == "ellipse") {
        const Point c = j.contains("center") ? parse_point(j.at("center"), "domain.center")
                                             : Point(0.0, 0.0);
        return Domain::closed_curve(
            CurveSpec::ellipse(c, j.at("ax").get<double>(), j.at("ay").get<double>()));
    }
    fail("domain.type", "unknown type '" + type + "'");
}

Support parse_support(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "support must be an object {t0, t1}");
    return Support::arc(j.at("t0").get<double>(), j.at("t1").get<double>());
}

BoundaryCondition parse_condition(const json& j, const std::string& where) {
    if (!j.contains("type")) fail(where, "missing type");
    const std::string type = j.at("type").get<std::string>();
    auto get = [&](const char* key) {
        return j.contains(key) ? parse_complex(j.at(key), where + "." + key) : Complex(0.0);
    };
    if (type == "local1d")
        return BoundaryCondition::local1d(get("a0"), get("a1"), get("b0"), get("b1"));
    if (type == "local2d") {
        Support s = j.contains("support") ? parse_support(j.at("support"), where + ".support")
                                          : Support::whole();
        return BoundaryCondition::local2d(get("dirichlet"), get("neumann"), s);
    }
    if (type == "nonlocal") {
        Support s = j.contains("support") ? parse_support(j.at("support"), where + ".support")
                                          : Support::whole();
        if (!j.contains("kernel")) fail(where, "nonlocal condition needs a kernel");
        const json& kj = j.at("kernel");
        const std::string form = kj.at("form").get<std::string>();
        if (form == "constant")
            return BoundaryCondition::nonlocal_constant(
                parse_complex(kj.at("c"), where + ".kernel.c"), s);
        if (form == "cosine")
            return BoundaryCondition::nonlocal_cosine(
                parse_complex(kj.at("amplitude"), where + ".kernel.amplitude"),
                kj.at("mode").get<int>(), s);
        if (form == "matrix") {
            const json& mj = kj.at("values");
            if (!mj.is_array() || mj.empty()) fail(where, "kernel.values must be a matrix");
            const auto rows = static_cast<Eigen::Index>(mj.size());
            const auto cols = static_cast<Eigen::Index>(mj[0].size());
            Mat K(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r) {
                if (static_cast<Eigen::Index>(mj[static_cast<size_t>(r)].size()) != cols)
                    fail(where, "kernel.values rows have unequal length");
                for (Eigen::Index c = 0; c < cols; ++c)
                    K(r, c) = parse_complex(mj[static_cast<size_t>(r)][static_cast<size_t>(c)],
                                            where + ".kernel.values");
            }
            return BoundaryCondition::nonlocal_matrix(K, s);
        }
        fail(where, "unknown kernel form '" + form + "'");
    }
    fail(where, "unknown condition type '" + type + "'");
}

SourceField parse_source(const json& j) {
    if (!j.contains("type")) fail("source", "missing type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "zero") return SourceField::zero();
    if (type == "constant")
        return SourceField::constant(parse_complex(j.at("value"), "source.value"));
    if (type == "sine")
        return SourceField::sine(parse_complex(j.at("amplitude"), "source.amplitude"),
                                 j.at("wavenumber").get<double>(),
                                 j.contains("phase") ? j.at("phase").get<double>() : 0.0);
    if (type == "polynomial") {
        std::vector<Complex> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_complex(c, "source.coeffs"));
        return SourceField::polynomial(std::move(coeffs));
    }
    if (type == "gaussian")
        return SourceField::gaussian(parse_point(j.at("center"), "source.center"),
                                     j.at("width").get<double>(),
                                     parse_complex(j.at("amplitude"), "source.amplitude"));
    fail("source.type", "unknown type '" + type + "'");
}

BoundaryData parse_boundary_data(const json& j) {
    BoundaryData d;
    if (!j.is_array()) fail("boundary_data", "expected a list with one entry per condition");
    for (size_t i = 0; i < j.size(); ++i) {
        BoundaryData::Entry e;
        const json& ej = j[i];
        if (ej.is_object() && ej.contains("values")) {
            e.is_constant = false;
            const json& vj = ej.at("values");
            e.values.resize(static_cast<Eigen::Index>(vj.size()));
            for (size_t r = 0; r < vj.size(); ++r)
                e.values[static_cast<Eigen::Index>(r)] =
                    parse_complex(vj[r], "boundary_data[" + std::to_string(i) + "].values");
        } else {
            e.value = parse_complex(ej, "boundary_data[" + std::to_string(i) + "]");
        }
        d.entries.push_back(std::move(e));
    }
    return d;
}

json condition_json(const BoundaryCondition& c) {
    json j;
    switch (c.kind) {
        case BoundaryCondition::Kind::local1d:
            j["type"] = "local1d";
            j["a0"] = complex_json(c.a0);
            j["a1"] = complex_json(c.a1);
            j["b0"] = complex_json(c.b0);
            j["b1"] = complex_json(c.b1);
            break;
        case BoundaryCondition::Kind::local2d:
            j["type"] = "local2d";
            j["dirichlet"] = complex_json(c.dirichlet);
            j["neumann"] = complex_json(c.neumann);
            break;
        case BoundaryCondition::Kind::nonlocal: {
            j["type"] = "nonlocal";
            json kj;
            switch (c.kernel_form) {
                case BoundaryCondition::KernelForm::constant:
                    kj["form"] = "constant";
                    kj["c"] = complex_json(c.kernel_amplitude);
                    break;
                case BoundaryCondition::KernelForm::cosine:
                    kj["form"] = "cosine";
                    kj["amplitude"] = complex_json(c.kernel_amplitude);
                    kj["mode"] = c.kernel_mode;
                    break;
                case BoundaryCondition::KernelForm::matrix: {
                    kj["form"] = "matrix";
                    json rows = json::array();
                    for (Eigen::Index r = 0; r < c.kernel.rows(); ++r) {
                        json row = json::array();
                        for (Eigen::Index cc = 0; cc < c.kernel.cols(); ++cc)
                            row.push_back(complex_json(c.kernel(r, cc)));
                        rows.push_back(row);
                    }
                    kj["values"] = rows;
                    break;
                }
            }
            j["kernel"] = kj;
            break;
        }
    }
    if (!c.support.all) j["support"] = json{{"t0", c.support.t0}, {"t1", c.support.t1}};
    return j;
}

json point_json(const Point& p) {
    return p.dim() == 1 ? json::array({p.x()}) : json::array({p.x(), p.y()});
}

}  // namespace

BoundaryConditionSet ProblemConfig::condition_set() const {
    if (adjoint_conditions.empty())
        return BoundaryConditionSet::with_default_adjoint(conditions, op);
    return BoundaryConditionSet::with_adjoint(conditions, adjoint_conditions);
}

std::shared_ptr<GreenFunction> ProblemConfig::build_green(const std::string& method_override) const {
    const std::string m = method_override.empty() ? method : method_override;
    const FundamentalSolution fs(op);
    const BoundaryDiscretization bd = boundary();
    if (m == "direct") return std::make_shared<GreenOperator>(fs, condition_set(), bd);
    if (m == "recursive") return std::make_shared<RecursiveGreen>(fs, condition_set(), bd);
    throw ConfigError("method must be 'direct' or 'recursive', got '" + m + "'");
}

ProblemConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    ProblemConfig c;
    if (!j.contains("operator")) fail("config", "missing operator section");
    c.op = parse_operator(j.at("operator"));
    if (!j.contains("domain")) fail("config", "missing domain section");
    c.domain = parse_domain(j.at("domain"));
    if (c.op.dim() != c.domain.dim())
        fail("config", "operator dimension does not match domain dimension");
    if (!j.contains("boundary_conditions")) fail("config", "missing boundary_conditions");
    const json& bj = j.at("boundary_conditions");
    for (size_t i = 0; i < bj.size(); ++i)
        c.conditions.push_back(
            parse_condition(bj[i], "boundary_conditions[" + std::to_string(i) + "]"));
    if (c.conditions.empty()) fail("boundary_conditions", "need m >= 1 conditions");
    if (j.contains("adjoint_boundary_conditions")) {
        const json& aj = j.at("adjoint_boundary_conditions");
        for (size_t i = 0; i < aj.size(); ++i)
            c.adjoint_conditions.push_back(
                parse_condition(aj[i], "adjoint_boundary_conditions[" + std::to_string(i) + "]"));
    }
    if (j.contains("source")) c.source = parse_source(j.at("source"));
    if (j.contains("boundary_data")) c.boundary_data = parse_boundary_data(j.at("boundary_data"));
    if (c.boundary_data.entries.empty())
        c.boundary_data = BoundaryData::zeros(static_cast<int>(c.conditions.size()));
    if (c.boundary_data.m() != static_cast<int>(c.conditions.size()))
        fail("boundary_data", "needs one entry per boundary condition");
    if (j.contains("discretization")) {
        const json& dj = j.at("discretization");
        if (dj.contains("boundary_nodes")) c.boundary_nodes = dj.at("boundary_nodes").get<int>();
        if (dj.contains("volume_nodes")) c.volume_nodes = dj.at("volume_nodes").get<int>();
    }
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    if (c.method != "direct" && c.method != "recursive")
        fail("method", "must be 'direct' or 'recursive'");
    if (j.contains("green")) {
        const json& gj = j.at("green");
        if (gj.contains("sources")) c.green_sources = parse_points(gj.at("sources"), "green.sources");
        if (gj.contains("grid")) c.green_grid = parse_points(gj.at("grid"), "green.grid");
    }
    if (j.contains("output")) {
        const json& oj = j.at("output");
        if (oj.contains("path")) c.output_path = oj.at("path").get<std::string>();
        if (oj.contains("grid")) {
            const json& gj = oj.at("grid");
            if (gj.is_object() && gj.contains("n")) {
                if (c.domain.dim() != 1)
                    fail("output.grid", "grid {n: ...} shorthand is 1D; list points explicitly");
                const int n = gj.at("n").get<int>();
                const double margin =
                    gj.contains("margin") ? gj.at("margin").get<double>() : 0.05;
                for (int i = 0; i < n; ++i) {
                    const double s = n == 1 ? 0.5 : margin + (1.0 - 2.0 * margin) * i / (n - 1);
                    c.output_grid.emplace_back(c.domain.a() + s * (c.domain.b() - c.domain.a()));
                }
            } else {
                c.output_grid = parse_points(gj, "output.grid");
            }
        }
    }
    for (const Point& p : c.output_grid)
        if (!c.domain.contains(p)) fail("output.grid", "grid point outside the domain interior");
    return c;
}

ProblemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const ProblemConfig& c) {
    json j;
    switch (c.op.type) {
        case OperatorSpec::Type::helmholtz1d:
            j["operator"] = {{"type", "helmholtz1d"}, {"k", complex_json(c.op.k)}};
            break;
        case OperatorSpec::Type::modified_helmholtz1d:
            j["operator"] = {{"type", "modified_helmholtz1d"}, {"kappa", c.op.kappa}};
            break;
        case OperatorSpec::Type::laplace2d:
            j["operator"] = {{"type", "laplace2d"}};
            break;
        case OperatorSpec::Type::helmholtz2d:
            j["operator"] = {{"type", "helmholtz2d"}, {"k", complex_json(c.op.k)}};
            break;
    }
    if (c.domain.dim() == 1) {
        j["domain"] = {{"type", "interval"}, {"a", c.domain.a()}, {"b", c.domain.b()}};
    } else if (c.domain.curve().kind == CurveSpec::Kind::circle) {
        j["domain"] = {{"type", "circle"},
                       {"center", point_json(c.domain.curve().center)},
                       {"radius", c.domain.curve().r1}};
    } else {
        j["domain"] = {{"type", "ellipse"},
                       {"center", point_json(c.domain.curve().center)},
                       {"ax", c.domain.curve().r1},
                       {"ay", c.domain.curve().r2}};
    }
    json bj = json::array();
    for (const auto& cond : c.conditions) bj.push_back(condition_json(cond));
    j["boundary_conditions"] = bj;
    if (!c.adjoint_conditions.empty()) {
        json aj = json::array();
        for (const auto& cond : c.adjoint_conditions) aj.push_back(condition_json(cond));
        j["adjoint_boundary_conditions"] = aj;
    }
    switch (c.source.kind) {
        case SourceField::Kind::zero:
            j["source"] = {{"type", "zero"}};
            break;
        case SourceField::Kind::constant:
            j["source"] = {{"type", "constant"}, {"value", complex_json(c.source.c)}};
            break;
        case SourceField::Kind::sine:
            j["source"] = {{"type", "sine"},
                           {"amplitude", complex_json(c.source.amplitude)},
                           {"wavenumber", c.source.wavenumber},
                           {"phase", c.source.phase}};
            break;
        case SourceField::Kind::polynomial: {
            json cj = json::array();
            for (Complex ck : c.source.coeffs) cj.push_back(complex_json(ck));
            j["source"] = {{"type", "polynomial"}, {"coeffs", cj}};
            break;
        }
        case SourceField::Kind::gaussian:
            j["source"] = {{"type", "gaussian"},
                           {"center", point_json(c.source.center)},
                           {"width", c.source.width},
                           {"amplitude", complex_json(c.source.amplitude)}};
            break;
    }
    json dj = json::array();
    for (const auto& e : c.boundary_data.entries) {
        if (e.is_constant) {
            dj.push_back(complex_json(e.value));
        } else {
            json vj = json::array();
            for (Eigen::Index i = 0; i < e.values.size(); ++i)
                vj.push_back(complex_json(e.values[i]));
            dj.push_back(json{{"values", vj}});
        }
    }
    j["boundary_data"] = dj;
    j["discretization"] = {{"boundary_nodes", c.boundary_nodes}, {"volume_nodes", c.volume_nodes}};
    j["method"] = c.method;
    if (!c.green_sources.empty() || !c.green_grid.empty()) {
        json gj;
        json sj = json::array();
        for (const Point& p : c.green_sources) sj.push_back(point_json(p));
        gj["sources"] = sj;
        json grj = json::array();
        for (const Point& p : c.green_grid) grj.push_back(point_json(p));
        gj["grid"] = grj;
        j["green"] = gj;
    }
    json oj;
    oj["path"] = c.output_path;
    json ogj = json::array();
    for (const Point& p : c.output_grid) ogj.push_back(point_json(p));
    oj["grid"] = ogj;
    j["output"] = oj;
    return j.dump(2);
}

}  // namespace greenfn
