#pragma once

// Quantitative accounting for tangle products: bound formulas, Schubert's
// connected-sum equality, the saddle/maxima budgets, certificate checking
// for the elimination bookkeeping, and knot-table reports.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "follab/census.hpp"
#include "follab/json_io.hpp"
#include "follab/level_tree.hpp"
#include "follab/moves.hpp"
#include "follab/predicates.hpp"

namespace follab {

struct TangleProductParams {
    int n = 1;      // strand count
    int beta1 = 1;  // bridge numbers of the factor links
    int beta2 = 1;
};

// beta1 + beta2 - n(10n-6).  May be non-positive; callers treat values < 1
// as vacuous rather than clamping, since the slack is informative.
inline long long product_lower_bound(const TangleProductParams& p) {
    return static_cast<long long>(p.beta1) + p.beta2 -
           static_cast<long long>(p.n) * (10LL * p.n - 6);
}

inline long long product_lower_bound(int n, int beta1, int beta2) {
    return product_lower_bound(TangleProductParams{n, beta1, beta2});
}

// Saddle count of an admissible product-sphere foliation: 10n-8, i.e. 5k-8
// at k = 2n punctures.
inline long long saddle_budget(int n) { return 10LL * n - 8; }

// Total maxima created when all saddles are eliminated at <= n apiece.
inline long long elimination_budget(int n) { return n * saddle_budget(n); }

// Connected sums: beta(K1 # K2) = beta(K1) + beta(K2) - 1.
inline long long schubert_sum(int beta1, int beta2) {
    return static_cast<long long>(beta1) + beta2 - 1;
}

struct KnotRecord {
    std::string name;
    int crossings = 0;
    int bridge_number = 1;
};

// CSV with header exactly `name,crossings,bridge_number`.  bridge_number
// must be positive, and equals 1 exactly for the record named "unknot"
// (1-bridge links are unknots).
inline std::vector<KnotRecord> load_knot_table(std::istream& in) {
    std::vector<KnotRecord> records;
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line))
        throw Error(Errc::ParseError, "line 1: missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "name,crossings,bridge_number")
        throw Error(Errc::ParseError, "line 1: header must be exactly "
                                      "\"name,crossings,bridge_number\"");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 3)
            throw Error(Errc::ParseError, where + "expected 3 fields, found " +
                                              std::to_string(fields.size()));

        KnotRecord rec;
        rec.name = fields[0];
        if (rec.name.empty()) throw Error(Errc::ParseError, where + "empty knot name");
        try {
            std::size_t used = 0;
            rec.crossings = std::stoi(fields[1], &used);
            if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
            rec.bridge_number = std::stoi(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, where + "fields must be integers");
        }
        if (rec.crossings < 0)
            throw Error(Errc::ParseError, where + "crossings must be >= 0");
        if (rec.bridge_number < 1)
            throw Error(Errc::ParseError, where + "bridge_number must be >= 1");
        if ((rec.bridge_number == 1) != (rec.name == "unknot"))
            throw Error(Errc::ParseError,
                        where + "bridge_number 1 and the name \"unknot\" must coincide");
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::vector<KnotRecord> load_knot_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open knot table " + path);
    return load_knot_table(in);
}

struct ProductRow {
    std::string name1, name2;
    int beta1 = 0, beta2 = 0;
    long long lower_bound = 0;
    bool vacuous = false;
    long long schubert_at_n1 = 0;
};

struct ProductReport {
    int n = 1;
    std::vector<ProductRow> rows;
};

// One row per unordered pair (self-pairs included), records sorted by name.
inline ProductReport product_report(std::vector<KnotRecord> table, int n) {
    std::sort(table.begin(), table.end(),
              [](const KnotRecord& a, const KnotRecord& b) { return a.name < b.name; });
    ProductReport report;
    report.n = n;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = i; j < table.size(); ++j) {
            ProductRow row;
            row.name1 = table[i].name;
            row.name2 = table[j].name;
            row.beta1 = table[i].bridge_number;
            row.beta2 = table[j].bridge_number;
            row.lower_bound = product_lower_bound(n, row.beta1, row.beta2);
            row.vacuous = row.lower_bound < 1;
            row.schubert_at_n1 = schubert_sum(row.beta1, row.beta2);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

inline std::string product_report_tsv(const ProductReport& r) {
    std::ostringstream out;
    out << "name1\tname2\tbeta1\tbeta2\tn\tlower_bound\tvacuous\tschubert_n1\n";
    for (const auto& row : r.rows)
        out << row.name1 << "\t" << row.name2 << "\t" << row.beta1 << "\t" << row.beta2 << "\t"
            << r.n << "\t" << row.lower_bound << "\t" << (row.vacuous ? "yes" : "no") << "\t"
            << row.schubert_at_n1 << "\n";
    return out.str();
}

inline json to_json(const ProductReport& r) {
    json j;
    j["n"] = r.n;
    j["rows"] = json::array();
    for (const auto& row : r.rows)
        j["rows"].push_back(json{{"name1", row.name1},
                                 {"name2", row.name2},
                                 {"beta1", row.beta1},
                                 {"beta2", row.beta2},
                                 {"lower_bound", row.lower_bound},
                                 {"vacuous", row.vacuous},
                                 {"schubert_n1", row.schubert_at_n1}});
    return j;
}

// Certificate instantiating the product-bound inequality chain on a concrete
// admissible foliation of the product sphere.  The hypothesis flags are
// attestations; deciding them is out of scope.
struct AccountingCertificate {
    int n = 1;
    int beta1 = 1;
    int beta2 = 1;
    long long beta_star = 0;  // maxima of the witnessed product-link embedding
    long long derived_lower_bound = 0;
    bool assumes_distance_ge_3 = false;
    bool assumes_c_incompressible = false;
    LevelTreeData initial_tree;
    EliminationLedger ledger;
};

struct CheckReport {
    bool passed = false;
    std::string failed_clause;  // one of "a".."e", empty when passed
    std::string detail;
    int replay_step = -1;  // first mismatching ledger step for clause b
};

// Clause names follow the certified chain:
//   a  initial tree admissible with k = 2n
//   b  ledger replays exactly under the min-cost elimination
//   c  every step creates at most n maxima
//   d  at most 10n-8 steps
//   e  beta1 + beta2 <= beta_star + total_cost + 2n, and the recorded
//      derived_lower_bound matches the closed form
// Structural clauses (a, c, d, e) are evaluated before the replay (b), so a
// cost out of budget reports as c even though replay would also catch it.
inline CheckReport check_certificate(const AccountingCertificate& cert) {
    CheckReport report;
    auto fail = [&report](const std::string& clause, const std::string& detail, int step = -1) {
        report.passed = false;
        report.failed_clause = clause;
        report.detail = detail;
        report.replay_step = step;
        return report;
    };

    if (cert.n < 1) return fail("a", "strand count must be >= 1");
    auto validation = validate(cert.initial_tree);
    if (!validation.valid())
        return fail("a", "initial tree invalid: " + validation.violations.front().message);
    auto tree = LevelTree::from_data_unchecked(cert.initial_tree);
    if (tree.k() != 2 * cert.n)
        return fail("a", "initial tree has k=" + std::to_string(tree.k()) +
                             ", expected 2n=" + std::to_string(2 * cert.n));
    auto admissibility = is_admissible(tree);
    if (!admissibility.admissible)
        return fail("a", std::string("initial tree not admissible (") +
                             violation_kind_name(admissibility.violations.front().kind) + ")");

    for (std::size_t i = 0; i < cert.ledger.steps.size(); ++i)
        if (cert.ledger.steps[i].cost > cert.n)
            return fail("c", "step " + std::to_string(i) + " creates " +
                                 std::to_string(cert.ledger.steps[i].cost) +
                                 " maxima, budget is n=" + std::to_string(cert.n),
                        static_cast<int>(i));

    if (static_cast<long long>(cert.ledger.steps.size()) > saddle_budget(cert.n))
        return fail("d", "ledger has " + std::to_string(cert.ledger.steps.size()) +
                             " steps, budget is 10n-8=" + std::to_string(saddle_budget(cert.n)));

    long long step_total = 0;
    for (const auto& s : cert.ledger.steps) step_total += s.cost;
    if (cert.derived_lower_bound != product_lower_bound(cert.n, cert.beta1, cert.beta2))
        return fail("e", "derived_lower_bound does not match beta1+beta2-n(10n-6)");
    if (static_cast<long long>(cert.beta1) + cert.beta2 >
        cert.beta_star + step_total + 2LL * cert.n)
        return fail("e", "beta1+beta2 exceeds beta_star + total_cost + 2n");

    auto [final_tree, replay] = eliminate_all(tree);
    (void)final_tree;
    for (std::size_t i = 0; i < std::max(replay.steps.size(), cert.ledger.steps.size()); ++i) {
        if (i >= replay.steps.size())
            return fail("b", "ledger has more steps than the replay", static_cast<int>(i));
        if (i >= cert.ledger.steps.size())
            return fail("b", "ledger has fewer steps than the replay", static_cast<int>(i));
        if (!(cert.ledger.steps[i] == replay.steps[i]))
            return fail("b", "step " + std::to_string(i) + " diverges from the replay (saddle " +
                                 replay.steps[i].saddle + ", cost " +
                                 std::to_string(replay.steps[i].cost) + ")",
                        static_cast<int>(i));
    }
    if (cert.ledger.total_cost != replay.total_cost)
        return fail("b", "total_cost does not match the replay");

    report.passed = true;
    return report;
}

// --- serialization ---

inline json to_json(const AccountingCertificate& cert) {
    json j;
    j["n"] = cert.n;
    j["beta1"] = cert.beta1;
    j["beta2"] = cert.beta2;
    j["beta_star"] = cert.beta_star;
    j["derived_lower_bound"] = cert.derived_lower_bound;
    j["assumptions"] = json{{"min_bridge_sphere_distance_ge_3", cert.assumes_distance_ge_3},
                            {"product_sphere_c_incompressible", cert.assumes_c_incompressible}};
    j["initial_tree"] = to_json(cert.initial_tree);
    j["ledger"] = to_json(cert.ledger);
    return j;
}

inline AccountingCertificate certificate_from_json(const json& j) {
    AccountingCertificate cert;
    try {
        cert.n = j.at("n").get<int>();
        cert.beta1 = j.at("beta1").get<int>();
        cert.beta2 = j.at("beta2").get<int>();
        cert.beta_star = j.at("beta_star").get<long long>();
        cert.derived_lower_bound = j.at("derived_lower_bound").get<long long>();
        if (j.contains("assumptions")) {
            const auto& a = j.at("assumptions");
            cert.assumes_distance_ge_3 =
                a.value("min_bridge_sphere_distance_ge_3", false);
            cert.assumes_c_incompressible =
                a.value("product_sphere_c_incompressible", false);
        }
        cert.initial_tree = tree_data_from_json(j.at("initial_tree"));
        cert.ledger = ledger_from_json(j.at("ledger"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad certificate: ") + e.what());
    }
    return cert;
}

inline json to_json(const CheckReport& r) {
    json j;
    j["passed"] = r.passed;
    j["failed_clause"] = r.passed ? json(nullptr) : json(r.failed_clause);
    j["detail"] = r.detail;
    j["replay_step"] = r.replay_step >= 0 ? json(r.replay_step) : json(nullptr);
    return j;
}

}  // namespace follab
