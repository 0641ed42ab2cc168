#include "psdrigid/io.hpp"

#include "psdrigid/errors.hpp"

#include <sstream>

namespace psdrigid {

using nlohmann::json;

namespace {

struct Entry {
    double value = 0.0;
    Rational exact = 0;
    bool from_string = false;
};

Entry parse_entry(const json& node, const std::string& path) {
    Entry e;
    if (node.is_number()) {
        e.value = node.get<double>();
        if (!std::isfinite(e.value)) throw SchemaError(path + ": number is not finite");
        e.exact = rational_from_double(e.value);
    } else if (node.is_string()) {
        try {
            e.exact = parse_rational(node.get<std::string>());
        } catch (const SchemaError& err) {
            throw SchemaError(path + ": " + err.what());
        }
        e.value = rational_to_double(e.exact);
        e.from_string = true;
    } else {
        throw SchemaError(path + ": expected a number or a \"num/den\" string");
    }
    return e;
}

struct FactorList {
    std::vector<SymMat> mats;
    std::vector<std::vector<Rational>> exact;
    bool any_string = false;
};

FactorList parse_factors(const json& doc, const char* key, int k) {
    const std::string base = std::string("/") + key;
    if (!doc.contains(key)) throw SchemaError(base + ": missing");
    const json& list = doc.at(key);
    if (!list.is_array()) throw SchemaError(base + ": expected an array of factors");
    const int n = sym_dim(k);
    FactorList out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = base + "/" + std::to_string(i);
        const json& f = list[i];
        if (!f.is_array() || static_cast<int>(f.size()) != n)
            throw SchemaError(path + ": expected an upper triangle of " + std::to_string(n) + " entries");
        std::vector<double> upper;
        std::vector<Rational> exact;
        for (int t = 0; t < n; ++t) {
            const Entry e = parse_entry(f[t], path + "/" + std::to_string(t));
            upper.push_back(e.value);
            exact.push_back(e.exact);
            out.any_string = out.any_string || e.from_string;
        }
        out.mats.push_back(SymMat::from_upper(k, std::move(upper)));
        out.exact.push_back(std::move(exact));
    }
    return out;
}

}  // namespace

PsdFactorization factorization_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("/: expected an object");
    PsdFactorization F;
    if (doc.contains("k")) {
        const json& k = doc.at("k");
        if (!k.is_number_integer() || k.get<int>() < 1) throw SchemaError("/k: expected a positive integer");
        F.k = k.get<int>();
    }
    FactorList A = parse_factors(doc, "A", F.k);
    FactorList B = parse_factors(doc, "B", F.k);
    F.A = std::move(A.mats);
    F.B = std::move(B.mats);
    if (A.any_string || B.any_string) F.exact = ExactFactors{std::move(A.exact), std::move(B.exact)};
    if (doc.contains("M") && !doc.at("M").is_null()) {
        const json& m = doc.at("M");
        if (!m.is_array() || static_cast<int>(m.size()) != F.p())
            throw SchemaError("/M: expected " + std::to_string(F.p()) + " rows");
        Eigen::MatrixXd M(F.p(), F.q());
        for (int i = 0; i < F.p(); ++i) {
            const std::string row_path = "/M/" + std::to_string(i);
            if (!m[i].is_array() || static_cast<int>(m[i].size()) != F.q())
                throw SchemaError(row_path + ": expected " + std::to_string(F.q()) + " entries");
            for (int j = 0; j < F.q(); ++j) M(i, j) = parse_entry(m[i][j], row_path + "/" + std::to_string(j)).value;
        }
        F.M = M;
    }
    return F;
}

PsdFactorization parse_factorization(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw SchemaError(std::string("/: malformed JSON: ") + err.what());
    }
    return factorization_from_json(doc);
}

json factorization_to_json(const PsdFactorization& F) {
    json doc;
    doc["k"] = F.k;
    auto emit = [&](const std::vector<SymMat>& mats, const std::vector<std::vector<Rational>>* exact) {
        json list = json::array();
        for (std::size_t i = 0; i < mats.size(); ++i) {
            json f = json::array();
            const auto& upper = mats[i].upper();
            for (std::size_t t = 0; t < upper.size(); ++t) {
                if (exact) f.push_back(rational_to_string((*exact)[i][t]));
                else f.push_back(upper[t]);
            }
            list.push_back(std::move(f));
        }
        return list;
    };
    doc["A"] = emit(F.A, F.exact ? &F.exact->A : nullptr);
    doc["B"] = emit(F.B, F.exact ? &F.exact->B : nullptr);
    if (F.M) doc["M"] = matrix_to_json(*F.M);
    return doc;
}

std::string serialize_factorization(const PsdFactorization& F) { return factorization_to_json(F).dump(2); }

json matrix_to_json(const Eigen::MatrixXd& X) {
    json rows = json::array();
    for (int i = 0; i < X.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < X.cols(); ++j) row.push_back(X(i, j) + 0.0);
        rows.push_back(std::move(row));
    }
    return rows;
}

json verdicts_to_json(const RigidityReport& report) {
    auto field = [](Verdict v) -> json {
        if (v == Verdict::yes) return true;
        if (v == Verdict::no) return false;
        return to_string(v);
    };
    json out;
    out["one_inf_rigid"] = field(report.one_inf_rigid);
    out["two_inf_rigid"] = field(report.two_inf_rigid);
    out["locally_rigid"] = field(report.locally_rigid);
    out["globally_rigid"] = field(report.globally_rigid);
    return out;
}

json report_to_json(const RigidityReport& report) {
    json out = verdicts_to_json(report);
    if (report.witness_triple) {
        json a = json::array(), b = json::array();
        for (int i : report.witness_triple->a) a.push_back(i + 1);
        for (int j : report.witness_triple->b) b.push_back(j + 1);
        out["witness_triple"] = json::array({a, b});
    } else {
        out["witness_triple"] = nullptr;
    }
    out["motion"] = report.motion ? matrix_to_json(report.motion->D) : json(nullptr);
    out["zero_count"] = report.zero_count;
    out["p_bar"] = report.p_bar;
    out["q_bar"] = report.q_bar;
    out["preconditions_met"] = report.preconditions_met;
    out["violations"] = report.violations;
    out["notes"] = report.notes;
    out["tolerance"] = report.tolerance;
    return out;
}

std::string render_text(const json& report) {
    std::ostringstream os;
    if (!report.is_object()) return report.dump() + "\n";
    for (const auto& [key, value] : report.items()) os << key << ": " << value.dump() << "\n";
    return os.str();
}

}  // namespace psdrigid
