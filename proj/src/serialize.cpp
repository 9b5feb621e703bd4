#include "shape/serialize.hpp"

#include "shape/errors.hpp"

#include <sstream>

namespace shape {

namespace {

std::string str(const Int &v) { return v.get_str(); }

Int int_from_json(const Json &j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (!j.is_string()) throw ShapeError(Errc::DimensionMismatch, "expected a decimal integer string");
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        throw ShapeError(Errc::DimensionMismatch, "bad integer literal '" + j.get<std::string>() + "'");
    return v;
}

std::int64_t i64_from_json(const Json &j) {
    Int v = int_from_json(j);
    if (!v.fits_slong_p()) throw ShapeError(Errc::DimensionMismatch, "integer out of range");
    return v.get_si();
}

Json opt_bool(const std::optional<bool> &b) { return b ? Json(*b) : Json(nullptr); }

std::optional<bool> opt_bool_from(const Json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<bool>();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string opt_str(const std::optional<bool> &b) { return b ? yes_no(*b) : ""; }

} // namespace

Json matrix_to_json(const IntMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json &j) {
    if (!j.is_array()) throw ShapeError(Errc::DimensionMismatch, "matrix must be an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j.at(0).size() : 0;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw ShapeError(Errc::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j.at(i).at(c));
    }
    return m;
}

GramMatrix gram_from_json(const Json &j) { return GramMatrix(matrix_from_json(j)); }

Json to_json(const FieldSpec &s) {
    Json h = Json::array();
    for (auto a : s.subgroup) h.push_back(std::to_string(a));
    return {{"ell", std::to_string(s.ell)}, {"conductor", std::to_string(s.conductor)}, {"subgroup", h}};
}

FieldSpec field_spec_from_json(const Json &j) {
    FieldSpec s;
    s.ell = static_cast<int>(i64_from_json(j.at("ell")));
    s.conductor = i64_from_json(j.at("conductor"));
    for (const auto &a : j.at("subgroup")) s.subgroup.push_back(i64_from_json(a));
    return s;
}

Json to_json(const QuadForm &q) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < q.rank(); ++i) {
        Json row = Json::array();
        for (std::size_t c = i; c < q.rank(); ++c) row.push_back(str(q.coeff(i, c)));
        coeffs.push_back(std::move(row));
    }
    return {{"rank", std::to_string(q.rank())}, {"upper_coefficients", coeffs}, {"polynomial", q.to_string()}};
}

QuadForm quad_form_from_json(const Json &j) {
    const auto n = static_cast<std::size_t>(i64_from_json(j.at("rank")));
    QuadForm q(n);
    const Json &c = j.at("upper_coefficients");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) q.coeff(i, k) = int_from_json(c.at(i).at(k - i));
    return q;
}

Json to_json(const CycElem &x) {
    Json coeffs = Json::object();
    for (std::int64_t r = 0; r < x.modulus(); ++r)
        if (x.coeff(r) != 0) coeffs[std::to_string(r)] = rat_to_string(x.coeff(r));
    return {{"m", x.modulus()}, {"coeffs", coeffs}};
}

CycElem cyc_elem_from_json(const Json &j) {
    CycElem x(j.at("m").get<std::int64_t>());
    for (const auto &[k, v] : j.at("coeffs").items()) {
        Rat r;
        if (r.set_str(v.get<std::string>(), 10) != 0)
            throw ShapeError(Errc::DimensionMismatch, "bad rational literal");
        r.canonicalize();
        x.coeff(std::stoll(k)) = r;
    }
    return x;
}

Json to_json(const ShapeReport &r) {
    Json j;
    j["field"] = to_json(r.spec);
    j["wild"] = r.spec.wild();
    j["disc"] = str(r.disc);
    j["rad"] = str(r.rad);
    j["source_path"] = source_path_name(r.source);
    j["basis"] = r.basis;
    j["gram_qL"] = matrix_to_json(r.gram_qL.matrix());
    j["gram_scaled"] = matrix_to_json(r.gram_scaled.matrix());
    j["det_qL"] = str(r.gram_qL.determinant());
    j["det_scaled"] = str(r.gram_scaled.determinant());
    j["shape"] = to_json(r.shape);
    const Verdicts &v = r.verdicts;
    j["verdicts"] = {{"integral_after_rad", v.integral_after_rad},
                     {"even", v.even},
                     {"primitive", v.primitive},
                     {"det_ok", v.det_ok},
                     {"shape_matches_expected", opt_bool(v.shape_matches_expected)},
                     {"embedding_ok", opt_bool(v.embedding_ok)},
                     {"model_agrees", opt_bool(v.model_agrees)}};
    if (r.tame)
        j["tame"] = {{"a", str(r.tame->a)},
                     {"b", str(r.tame->b)},
                     {"lagrangian", r.tame->lagrangian},
                     {"matches_closed_form", r.tame->matches_closed_form}};
    else
        j["tame"] = nullptr;
    Json w;
    w["shape"] = r.shape_witness ? matrix_to_json(*r.shape_witness) : Json(nullptr);
    w["embedding"] = r.embedding ? matrix_to_json(*r.embedding) : Json(nullptr);
    w["embedding_index"] = r.embedding_index ? Json(str(*r.embedding_index)) : Json(nullptr);
    j["witnesses"] = w;
    j["notes"] = r.notes;
    return j;
}

ShapeReport report_from_json(const Json &j) {
    ShapeReport r;
    r.spec = field_spec_from_json(j.at("field"));
    r.disc = int_from_json(j.at("disc"));
    r.rad = int_from_json(j.at("rad"));
    r.source = j.at("source_path").get<std::string>() == "direct" ? SourcePath::Direct : SourcePath::ConnerPerlis;
    r.basis = j.at("basis").get<std::string>();
    r.gram_qL = gram_from_json(j.at("gram_qL"));
    r.gram_scaled = gram_from_json(j.at("gram_scaled"));
    r.shape = quad_form_from_json(j.at("shape"));
    const Json &v = j.at("verdicts");
    r.verdicts.integral_after_rad = v.at("integral_after_rad").get<bool>();
    r.verdicts.even = v.at("even").get<bool>();
    r.verdicts.primitive = v.at("primitive").get<bool>();
    r.verdicts.det_ok = v.at("det_ok").get<bool>();
    r.verdicts.shape_matches_expected = opt_bool_from(v, "shape_matches_expected");
    r.verdicts.embedding_ok = opt_bool_from(v, "embedding_ok");
    r.verdicts.model_agrees = opt_bool_from(v, "model_agrees");
    if (j.contains("tame") && !j.at("tame").is_null()) {
        const Json &t = j.at("tame");
        r.tame = TameValues{int_from_json(t.at("a")), int_from_json(t.at("b")), t.at("lagrangian").get<bool>(),
                            t.at("matches_closed_form").get<bool>()};
    }
    const Json &w = j.at("witnesses");
    if (!w.at("shape").is_null()) r.shape_witness = matrix_from_json(w.at("shape"));
    if (!w.at("embedding").is_null()) r.embedding = matrix_from_json(w.at("embedding"));
    if (!w.at("embedding_index").is_null()) r.embedding_index = int_from_json(w.at("embedding_index"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

std::string csv_header() {
    return "ell,conductor,subgroup,wild,disc,rad,det_scaled,integral_after_rad,even,primitive,det_ok,"
           "shape_matches_expected,embedding_ok,embedding_index";
}

std::string csv_row(const ShapeReport &r) {
    std::ostringstream os;
    os << r.spec.ell << ',' << r.spec.conductor << ",\"";
    for (std::size_t i = 0; i < r.spec.subgroup.size(); ++i) os << (i ? " " : "") << r.spec.subgroup[i];
    const Verdicts &v = r.verdicts;
    os << "\"," << yes_no(r.spec.wild()) << ',' << str(r.disc) << ',' << str(r.rad) << ','
       << str(r.gram_scaled.determinant()) << ',' << yes_no(v.integral_after_rad) << ',' << yes_no(v.even) << ','
       << yes_no(v.primitive) << ',' << yes_no(v.det_ok) << ',' << opt_str(v.shape_matches_expected) << ','
       << opt_str(v.embedding_ok) << ',' << (r.embedding_index ? str(*r.embedding_index) : "");
    return os.str();
}

std::string pretty(const ShapeReport &r) {
    std::ostringstream os;
    const Verdicts &v = r.verdicts;
    os << "field      ell=" << r.spec.ell << " conductor=" << r.spec.conductor << " |H|=" << r.spec.subgroup.size()
       << (r.spec.wild() ? " (wild)" : " (tame)") << '\n'
       << "disc       " << str(r.disc) << "   rad " << str(r.rad) << '\n'
       << "source     " << source_path_name(r.source) << ": " << r.basis << '\n'
       << "q_L        " << r.gram_qL.matrix().to_string() << '\n'
       << "q_L/rad    " << r.gram_scaled.matrix().to_string() << "  det " << str(r.gram_scaled.determinant()) << '\n'
       << "Q_L        " << r.shape.to_string() << '\n'
       << "verdicts   integral=" << yes_no(v.integral_after_rad) << " even=" << yes_no(v.even)
       << " primitive=" << yes_no(v.primitive) << " det=" << yes_no(v.det_ok)
       << " shape=" << (v.shape_matches_expected ? yes_no(*v.shape_matches_expected) : "-")
       << " embedding=" << (v.embedding_ok ? yes_no(*v.embedding_ok) : "-");
    if (v.model_agrees) os << " model=" << yes_no(*v.model_agrees);
    os << '\n';
    if (r.embedding_index) os << "embedding  index " << str(*r.embedding_index) << " in A_" << r.spec.ell - 1 << '\n';
    for (const auto &n : r.notes) os << "note       " << n << '\n';
    return os.str();
}

} // namespace shape
