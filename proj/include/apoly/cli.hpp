#pragma once
// Command-line plumbing shared by the apoly binary and its tests: job
// descriptions (input format + options), a content-addressed result cache
// with atomic writes, deterministic JSON post-processing, and the drivers
// behind each subcommand.  Exit-code contract: 0 success, 2 input error,
// 3 budget exceeded (partial report still printed), 4 internal anomaly.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "apoly/ajspec.hpp"
#include "apoly/elim.hpp"
#include "apoly/newton.hpp"
#include "apoly/su2.hpp"

namespace apoly {

struct JobOptions {
    std::string strategy = "auto";
    double budget_seconds = 60.0;
    unsigned seed = 20240;
    double tol = 1e-10;
    int attempts = 200;  // multistart attempts per representation scan
};

// One knot input: a diagram code in one of the accepted formats plus options.
struct KnotJob {
    std::string name;    // label used in reports; may be empty
    std::string format;  // "dt" | "pd" | "braid"
    std::string code;    // raw code text as supplied
    JobOptions options;

    // Whitespace-insensitive canonical form of the input (cache key material).
    std::string normalized_code() const {
        std::string out;
        bool space = false;
        for (char c : code) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                space = !out.empty();
                continue;
            }
            if (space) out.push_back(' ');
            space = false;
            out.push_back(c);
        }
        return out;
    }

    KnotDiagram diagram() const {
        if (format == "dt") return parse_dt(parse_int_list(code));
        if (format == "braid") return parse_braid(parse_int_list(code));
        if (format == "pd") return parse_pd(code);
        throw MalformedCode("unknown input format: " + format);
    }

    KnotPresentation presentation() const { return wirtinger(diagram()); }

    static std::vector<int> parse_int_list(const std::string& text) {
        std::vector<int> out;
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) {
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back(v);
            } catch (const std::exception&) {
                throw MalformedCode("not an integer entry: '" + tok + "'");
            }
        }
        return out;
    }
};

// Filling slopes "p", "p/q" separated by commas, e.g. "1,-1,2,-2,1/2,-1/2".
inline std::vector<std::pair<int, int>> parse_fillings(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        int p = 0, q = 1;
        auto slash = item.find('/');
        try {
            std::size_t used = 0;
            p = std::stoi(item.substr(0, slash), &used);
            if (used != (slash == std::string::npos ? item.size() : slash))
                throw std::invalid_argument(item);
            if (slash != std::string::npos) {
                q = std::stoi(item.substr(slash + 1), &used);
                if (used != item.size() - slash - 1) throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw MalformedCode("not a filling slope: '" + item + "'");
        }
        if (q == 0) throw MalformedCode("filling slope with zero denominator: '" + item + "'");
        out.emplace_back(p, q);
    }
    if (out.empty()) throw MalformedCode("empty filling list");
    return out;
}

// Surgery coefficients scanned when none are given: slopes +-1, +-2, +-1/2
// and 1/n for n <= 4.
inline std::vector<std::pair<int, int>> default_fillings() {
    return {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {1, 3}, {1, 4}};
}

// ---------------------------------------------------------------------------
// result cache

// Records keyed by a content hash of (subcommand, normalized input, options).
// A hit replays the exact bytes of the original computation; writes go
// through a temp file and an atomic rename.
class ResultCache {
  public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }

    static std::string content_key(const std::string& material) {
        std::uint64_t h = 14695981039346656037ull;  // FNV-1a 64-bit
        for (unsigned char c : material) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    std::optional<std::string> lookup(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream body;
        body << in.rdbuf();
        return body.str();
    }

    void store(const std::string& key, const std::string& payload) const {
        if (!enabled()) return;
        std::filesystem::create_directories(dir_);
        auto final_path = path_for(key);
        auto tmp_path = final_path + ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            out << payload;
            if (!out) {
                std::error_code ec;
                std::filesystem::remove(tmp_path, ec);
                return;  // cache is best-effort; the result was still printed
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp_path, final_path, ec);
        if (ec) std::filesystem::remove(tmp_path, ec);
    }

  private:
    std::string path_for(const std::string& key) const {
        return (std::filesystem::path(dir_) / (key + ".json")).string();
    }

    std::string dir_;
};

// ---------------------------------------------------------------------------
// deterministic JSON rendering

// Floating-point leaves become decimal strings: serialization stays exact,
// locale-proof and byte-stable across platforms.
inline void stringify_floats(nlohmann::json& j) {
    if (j.is_object() || j.is_array()) {
        for (auto& e : j) stringify_floats(e);
    } else if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        j = std::string(buf);
    }
}

inline std::string render_json(nlohmann::json j, bool pretty) {
    stringify_floats(j);
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

// ---------------------------------------------------------------------------
// subcommand drivers

struct CommandResult {
    nlohmann::json payload;
    int exit_code = 0;
};

namespace cli_detail {

inline nlohmann::json job_header(const KnotJob& job) {
    return {{"name", job.name.empty() ? job.normalized_code() : job.name},
            {"format", job.format},
            {"code", job.normalized_code()}};
}

inline nlohmann::json dump_system_json(const KnotPresentation& pres) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& b : build_branch_systems(tietze_simplify(pres))) {
        nlohmann::json eqs = nlohmann::json::array();
        for (const auto& e : b.equations) eqs.push_back(e.to_json());
        branches.push_back({{"branch", b.branch},
                            {"unknowns", b.unknowns},
                            {"meridian", b.m_name},
                            {"longitude", b.l_name},
                            {"equations", std::move(eqs)}});
    }
    return branches;
}

// Wraps a driver body with the exit-code contract.  The body fills `out`;
// error classes map to distinct codes with machine-readable context.
template <class F>
inline CommandResult guarded(const F& body) {
    CommandResult res;
    try {
        body(res.payload);
    } catch (const EliminationTimeout& e) {
        res.payload["error"] = {{"class", "budget_exceeded"}, {"what", e.what()}};
        res.exit_code = 3;
    } catch (const EmptyEliminant& e) {
        res.payload["error"] = {{"class", "empty_eliminant"}, {"what", e.what()}};
        res.exit_code = 4;
    } catch (const ApolyError& e) {  // malformed codes, bad options, parse errors
        res.payload["error"] = {{"class", "input"}, {"what", e.what()}};
        res.exit_code = 2;
    }
    return res;
}

inline APolyResult eliminate_job(const KnotJob& job) {
    CertifyOptions copt;
    copt.seed = job.options.seed;
    copt.tolerance = job.options.tol;
    return eliminate(job.presentation(), parse_strategy(job.options.strategy),
                     Budget(job.options.budget_seconds), copt);
}

}  // namespace cli_detail

inline CommandResult run_apoly(const KnotJob& job, bool dump_system = false) {
    return cli_detail::guarded([&](nlohmann::json& out) {
        auto res = cli_detail::eliminate_job(job);
        out = res.to_json();
        out["knot"] = cli_detail::job_header(job);
        if (dump_system) out["system"] = cli_detail::dump_system_json(job.presentation());
    });
}

inline CommandResult run_slopes(const KnotJob& job) {
    return cli_detail::guarded([&](nlohmann::json& out) {
        auto res = cli_detail::eliminate_job(job);
        out["knot"] = cli_detail::job_header(job);
        out["classification"] = res.classification();
        out["nontrivial_text"] = res.nontrivial.to_string();
        out["full_text"] = res.full.to_string();
        if (res.nontrivial.total_degree() > 0) {
            auto hull = newton_polygon(res.nontrivial);
            out["nontrivial_slopes"] = slope_strings(boundary_slopes(hull));
            out["nontrivial_newton"] = hull.to_json();
        } else {
            out["nontrivial_slopes"] = nlohmann::json::array();
        }
        auto full_hull = newton_polygon(res.full);
        out["full_slopes"] = slope_strings(boundary_slopes(full_hull));
        out["full_newton"] = full_hull.to_json();
    });
}

inline CommandResult run_su2scan(const KnotJob& job,
                                 const std::vector<std::pair<int, int>>& fillings) {
    return cli_detail::guarded([&](nlohmann::json& out) {
        auto pres = job.presentation();
        auto scans = su2_scan(pres, fillings, job.options.attempts, job.options.tol,
                              job.options.seed);
        out["knot"] = cli_detail::job_header(job);
        nlohmann::json rows = nlohmann::json::array();
        std::vector<const FillingScan*> found;
        for (const auto& s : scans) {
            nlohmann::json row = s.to_json();
            if (!s.found_non_cyclic) row["note"] = "no non-cyclic representation found";
            rows.push_back(std::move(row));
            if (s.found_non_cyclic) found.push_back(&s);
        }
        out["fillings"] = std::move(rows);
        bool distinct = true;
        double min_distance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < found.size(); ++i)
            for (std::size_t j = i + 1; j < found.size(); ++j) {
                double d = boundary_distance(found[i]->boundary, found[j]->boundary);
                min_distance = std::min(min_distance, d);
                if (d <= 1e-6) distinct = false;
            }
        out["pairwise_distinct"] = distinct;
        if (found.size() >= 2) out["min_boundary_distance"] = min_distance;
    });
}

inline CommandResult run_ajcheck(const KnotJob& job, const std::string& operator_text) {
    return cli_detail::guarded([&](nlohmann::json& out) {
        auto op = parse_operator(operator_text);
        auto specialized = specialize_q1_tracked(op);
        auto res = cli_detail::eliminate_job(job);
        auto rep = aj_compare(specialized.poly, res);
        out = rep.to_json();
        out["knot"] = cli_detail::job_header(job);
        out["operator"] = operator_text;
        out["specialized_text"] = specialized.poly.to_string();
    });
}

// Batch over a name + DT-code table.  Jobs run on up to `workers` threads
// (each job is independent and budgeted separately); rows keep table order
// and report timeouts explicitly instead of aborting the run.
inline CommandResult run_batch(const std::string& table_path, const JobOptions& options,
                               int workers) {
    return cli_detail::guarded([&](nlohmann::json& out) {
        std::ifstream in(table_path);
        if (!in) throw MalformedCode("cannot open knot table: " + table_path);
        auto table = load_knot_table(in);
        std::vector<nlohmann::json> rows(table.size());
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (std::size_t i = next.fetch_add(1); i < table.size(); i = next.fetch_add(1)) {
                KnotJob job;
                job.name = table[i].name;
                job.format = "dt";
                std::string code;
                for (int v : table[i].dt) code += (code.empty() ? "" : " ") + std::to_string(v);
                job.code = code;
                job.options = options;
                auto one = run_apoly(job);
                nlohmann::json row;
                row["name"] = table[i].name;
                switch (one.exit_code) {
                    case 0:
                        row["status"] = "done";
                        row["classification"] = one.payload["classification"];
                        row["verdict"] = one.payload["verdict"];
                        row["A_text"] = one.payload["A_text"];
                        row["strategy"] = one.payload["strategy"];
                        break;
                    case 3: row["status"] = "timeout"; break;
                    default:
                        row["status"] = "error";
                        row["error"] = one.payload["error"];
                }
                rows[i] = std::move(row);
            }
        };
        int n = std::max(1, workers);
        std::vector<std::thread> pool;
        for (int t = 1; t < n; ++t) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();
        int done = 0, timeouts = 0, errors = 0;
        for (const auto& r : rows) {
            const std::string st = r.at("status");
            done += st == "done";
            timeouts += st == "timeout";
            errors += st == "error";
        }
        out["table"] = table_path;
        out["rows"] = rows;
        out["summary"] = {{"knots", table.size()},
                          {"done", done},
                          {"timeouts", timeouts},
                          {"errors", errors}};
    });
}

}  // namespace apoly
