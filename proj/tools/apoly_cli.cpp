// apoly — A-polynomials of knots from diagram codes.
//
//   apoly apoly   --dt "4 6 2"              eliminant + classification
//   apoly slopes  --braid "1 1 1"           Newton-polygon boundary slopes
//   apoly su2scan --dt "4 6 2" --fillings "1,1/2"
//   apoly ajcheck --dt "4 6 2" --operator "Q^3*E + 1"
//   apoly batch   --table knots.txt --workers 2
//
// Exit codes: 0 success, 2 malformed input, 3 budget exceeded (a partial
// report is still printed), 4 elimination produced no curve.  All numeric
// values in the JSON output are rendered as decimal strings.

#include <CLI11.hpp>

#include <iostream>

#include "apoly/cli.hpp"

#ifndef KNOT_DATA_DIR
#define KNOT_DATA_DIR "data"
#endif

namespace {

struct CommonArgs {
    std::string dt, pd, braid;
    apoly::JobOptions options;
    std::string cache_dir;
    bool pretty = false;
};

void add_common(CLI::App* sub, CommonArgs& a, bool with_code = true) {
    if (with_code) {
        auto* dt = sub->add_option("--dt", a.dt, "DT code, e.g. \"4 6 2\"");
        auto* pd = sub->add_option("--pd", a.pd, "PD code, e.g. \"X(1,4,2,3)...\"");
        auto* braid = sub->add_option("--braid", a.braid, "braid word, e.g. \"1 1 1\"");
        dt->excludes(pd)->excludes(braid);
        pd->excludes(braid);
    }
    sub->add_option("--strategy", a.options.strategy,
                    "elimination strategy: auto|groebner|resultant_tower")
        ->capture_default_str();
    sub->add_option("--budget-seconds", a.options.budget_seconds,
                    "wall-clock limit for exact computation")
        ->capture_default_str();
    sub->add_option("--seed", a.options.seed, "seed for all randomized numerics")
        ->capture_default_str();
    sub->add_option("--tol", a.options.tol, "numeric tolerance for certification/scans")
        ->capture_default_str();
    sub->add_option("--cache-dir", a.cache_dir,
                    "directory for the result cache (empty = no cache)");
    sub->add_flag("--pretty", a.pretty, "indented JSON output");
    static bool compact_dummy = false;
    sub->add_flag("--json", compact_dummy, "compact JSON output (default)");
}

apoly::KnotJob make_job(const CommonArgs& a) {
    apoly::KnotJob job;
    int given = !a.dt.empty() + !a.pd.empty() + !a.braid.empty();
    if (given != 1)
        throw apoly::MalformedCode("exactly one of --dt/--pd/--braid is required");
    if (!a.dt.empty()) job.format = "dt", job.code = a.dt;
    if (!a.pd.empty()) job.format = "pd", job.code = a.pd;
    if (!a.braid.empty()) job.format = "braid", job.code = a.braid;
    job.options = a.options;
    return job;
}

std::string options_key(const apoly::JobOptions& o) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s|%.17g|%u|%.17g|%d", o.strategy.c_str(),
                  o.budget_seconds, o.seed, o.tol, o.attempts);
    return buf;
}

// Print (and on success, remember) the result.  Cache hits replay the stored
// bytes exactly; only clean exits are cached.
int finish(const apoly::CommandResult& result, const CommonArgs& a,
           const std::string& key_material) {
    apoly::ResultCache cache(a.cache_dir);
    std::string key = apoly::ResultCache::content_key(key_material);
    std::string body = apoly::render_json(result.payload, a.pretty);
    if (result.exit_code == 0) cache.store(key, body);
    std::cout << body;
    return result.exit_code;
}

// Returns true (and prints) when the cache already holds this computation.
bool replay(const CommonArgs& a, const std::string& key_material) {
    apoly::ResultCache cache(a.cache_dir);
    if (auto hit = cache.lookup(apoly::ResultCache::content_key(key_material))) {
        std::cout << *hit;
        return true;
    }
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"A-polynomials of knots in S^3 from diagram codes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file ([subcommand] sections)")
        ->envname("APOLY_CONFIG");

    CommonArgs apoly_args, slopes_args, su2_args, aj_args, batch_args;
    bool dump_system = false;
    std::string fillings_text, operator_text, operator_file;
    std::string table_path = std::string(KNOT_DATA_DIR) + "/knots_dt.txt";
    int workers = 1;

    auto* cmd_apoly = app.add_subcommand("apoly", "compute the A-polynomial");
    add_common(cmd_apoly, apoly_args);
    cmd_apoly->add_flag("--dump-system", dump_system,
                        "include the per-branch equation systems in the output");

    auto* cmd_slopes = app.add_subcommand("slopes", "Newton-polygon boundary slopes");
    add_common(cmd_slopes, slopes_args);

    auto* cmd_su2 = app.add_subcommand("su2scan", "scan Dehn fillings for SU(2) reps");
    add_common(cmd_su2, su2_args);
    cmd_su2->add_option("--fillings", fillings_text,
                        "comma-separated slopes p or p/q (default: 1,-1,2,-2,1/2,-1/2,1/3,1/4)");
    cmd_su2->add_option("--attempts", su2_args.options.attempts,
                        "multistart attempts per filling")
        ->capture_default_str();

    auto* cmd_aj = app.add_subcommand("ajcheck", "specialize an operator at q=1 and compare");
    add_common(cmd_aj, aj_args);
    auto* op_inline = cmd_aj->add_option("--operator", operator_text,
                                         "operator text, e.g. \"Q^3*E + 1\"");
    auto* op_file = cmd_aj->add_option("--operator-file", operator_file,
                                       "file containing the operator text");
    op_inline->excludes(op_file);

    auto* cmd_batch = app.add_subcommand("batch", "run a whole knot table");
    add_common(cmd_batch, batch_args, /*with_code=*/false);
    cmd_batch->add_option("--table", table_path, "knot table: name then DT code per line")
        ->capture_default_str();
    cmd_batch->add_option("--workers", workers, "concurrent jobs")->capture_default_str();

    for (auto* sub : {cmd_apoly, cmd_slopes, cmd_su2, cmd_aj, cmd_batch})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // pin flag/usage errors to the input-error code
    }

    try {
        if (cmd_apoly->parsed()) {
            auto job = make_job(apoly_args);
            std::string key = "apoly\n" + job.format + "\n" + job.normalized_code() + "\n" +
                              options_key(job.options) + "\n" + (dump_system ? "dump" : "") +
                              (apoly_args.pretty ? "|pretty" : "");
            if (replay(apoly_args, key)) return 0;
            return finish(apoly::run_apoly(job, dump_system), apoly_args, key);
        }
        if (cmd_slopes->parsed()) {
            auto job = make_job(slopes_args);
            std::string key = "slopes\n" + job.format + "\n" + job.normalized_code() + "\n" +
                              options_key(job.options) + (slopes_args.pretty ? "|pretty" : "");
            if (replay(slopes_args, key)) return 0;
            return finish(apoly::run_slopes(job), slopes_args, key);
        }
        if (cmd_su2->parsed()) {
            auto job = make_job(su2_args);
            auto fillings = fillings_text.empty() ? apoly::default_fillings()
                                                  : apoly::parse_fillings(fillings_text);
            std::string key = "su2scan\n" + job.format + "\n" + job.normalized_code() + "\n" +
                              options_key(job.options) + "\n" + fillings_text +
                              (su2_args.pretty ? "|pretty" : "");
            if (replay(su2_args, key)) return 0;
            return finish(apoly::run_su2scan(job, fillings), su2_args, key);
        }
        if (cmd_aj->parsed()) {
            auto job = make_job(aj_args);
            std::string text = operator_text;
            if (!operator_file.empty()) {
                std::ifstream in(operator_file);
                if (!in) throw apoly::MalformedCode("cannot open operator file: " + operator_file);
                std::ostringstream body;
                body << in.rdbuf();
                text = body.str();
            }
            if (text.empty())
                throw apoly::MalformedCode("one of --operator/--operator-file is required");
            std::string key = "ajcheck\n" + job.format + "\n" + job.normalized_code() + "\n" +
                              options_key(job.options) + "\n" + text +
                              (aj_args.pretty ? "|pretty" : "");
            if (replay(aj_args, key)) return 0;
            return finish(apoly::run_ajcheck(job, text), aj_args, key);
        }
        if (cmd_batch->parsed()) {
            std::ifstream in(table_path, std::ios::binary);
            std::ostringstream table_bytes;
            table_bytes << in.rdbuf();  // key by table content, not path
            std::string key = "batch\n" + table_bytes.str() + "\n" + options_key(batch_args.options) +
                              "\n" + std::to_string(workers) + (batch_args.pretty ? "|pretty" : "");
            if (replay(batch_args, key)) return 0;
            return finish(apoly::run_batch(table_path, batch_args.options, workers), batch_args,
                          key);
        }
    } catch (const apoly::ApolyError& e) {
        nlohmann::json err{{"error", {{"class", "input"}, {"what", e.what()}}}};
        std::cout << apoly::render_json(err, false);
        return 2;
    }
    return 0;
}
