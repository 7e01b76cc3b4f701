#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "surf/binary_io.hpp"
#include "surf/corpus.hpp"
#include "surf/engine.hpp"
#include "surf/index.hpp"
#include "surf/query.hpp"

namespace fs = std::filesystem;
using namespace surf;

namespace {

constexpr int kExitError = 1;
constexpr int kExitIncompatible = 2;

struct MeasureFlags {
    std::string measure = "bm25";
    double k1 = 1.2;
    double b = 0.75;
    double mu = 2500.0;

    MeasureParams params() const {
        MeasureParams p;
        p.kind = parse_measure(measure);
        p.k1 = k1;
        p.b = b;
        p.mu = mu;
        p.validate();
        return p;
    }
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& f) {
    cmd->add_option("--measure", f.measure, "bm25, tfidf, lmds or freq")
        ->check(CLI::IsMember({"bm25", "tfidf", "lmds", "freq"}));
    cmd->add_option("--k1", f.k1, "BM25 k1");
    cmd->add_option("--b", f.b, "BM25 b");
    cmd->add_option("--mu", f.mu, "Dirichlet smoothing mu");
}

std::string read_text_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A text file holds one document per line; a directory one per file, in
// file name order.
Collection load_input(const fs::path& input) {
    if (fs::is_directory(input)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(input))
            if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
        std::vector<std::pair<std::string, std::string>> docs;
        for (const auto& f : files) {
            auto body = read_text_file(f);
            std::replace(body.begin(), body.end(), '\n', ' ');
            docs.emplace_back(f.filename().string(), std::move(body));
        }
        if (docs.empty()) throw std::runtime_error("no documents in " + input.string());
        return ingest_named(docs);
    }
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot read " + input.string());
    return ingest(in);
}

void print_components(std::ostream& os, const IndexManifest& m, double raw_bytes) {
    std::uint64_t total = 0;
    char line[160];
    for (const auto& c : m.components) {
        std::snprintf(line, sizeof line, "%-5s %-16s %12llu  %8.3f\n", c.tag.c_str(), c.file.c_str(),
                      static_cast<unsigned long long>(c.bytes), static_cast<double>(c.bytes) / raw_bytes);
        os << line;
        total += c.bytes;
    }
    std::snprintf(line, sizeof line, "%-5s %-16s %12llu  %8.3f\n", "", "total", static_cast<unsigned long long>(total),
                  static_cast<double>(total) / raw_bytes);
    os << line;
}

// n * ceil(log2 sigma) bits of the plain token sequence, in bytes.
double raw_text_bytes(const Collection& c) {
    const auto symbols = std::max<std::uint64_t>(2, c.vocabulary().size());
    const auto bits = static_cast<double>(std::bit_width(symbols - 1));
    return static_cast<double>(c.size()) * bits / 8.0;
}

int cmd_build(const fs::path& input, const fs::path& output, const std::string& variant_name) {
    const Variant variant = parse_variant(variant_name);
    if (!fs::exists(input)) throw std::runtime_error("input " + input.string() + " does not exist");
    if (fs::exists(output) && !fs::is_empty(output) && !fs::exists(output / "manifest.txt"))
        throw std::runtime_error(output.string() + " exists and is not an index directory");

    auto collection = load_input(input);
    const auto raw = raw_text_bytes(collection);
    const auto index = Index::build(std::move(collection), variant);

    // written next to the target and moved into place once complete
    const auto parent = output.has_parent_path() ? output.parent_path() : fs::path(".");
    fs::create_directories(parent);
    const auto staging = parent / (output.filename().string() + ".partial-" + std::to_string(std::random_device{}()));
    try {
        const auto manifest = index.save(staging);
        if (fs::exists(output)) fs::remove_all(output);
        fs::rename(staging, output);
        std::cout << "documents " << index.collection().num_docs() << ", tokens " << index.collection().size()
                  << ", variant " << to_string(variant) << "\n";
        print_components(std::cout, manifest, raw);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw;
    }
    return 0;
}

struct ParsedQuery {
    std::string qid;
    Query query;
};

std::vector<ParsedQuery> load_queries(const fs::path& file, const Index& index, bool mwe, double threshold) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::vector<ParsedQuery> out;
    for (const auto& line : read_query_file(in)) {
        auto text = parse_query_text(line.body);
        if (mwe) text = mwe_parse(index, text, threshold);
        out.push_back({line.qid, to_query(text, index.collection().vocabulary())});
    }
    return out;
}

// Runs fn(i) for every query on a small pool; fn must only touch slot i.
template <class Fn>
void for_each_query(std::size_t count, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct QueryFlags {
    fs::path index;
    fs::path queries;
    std::size_t k = 10;
    std::string mode = "or";
    MeasureFlags measure;
    std::string estimator = "e2";
    bool mwe = false;
    double threshold = 10.0;
    unsigned threads = 1;
};

int cmd_query(const QueryFlags& f) {
    const auto index = Index::load(f.index);
    SearchConfig cfg;
    cfg.k = f.k;
    cfg.mode = parse_mode(f.mode);
    cfg.measure = f.measure.params();
    cfg.estimator = parse_estimator(f.estimator);
    cfg.variant = index.variant();
    const auto queries = load_queries(f.queries, index, f.mwe, f.threshold);
    for (const auto& q : queries) check_compatible(index, cfg, q.query);

    std::vector<std::string> runs(queries.size());
    for_each_query(queries.size(), f.threads, [&](std::size_t i) {
        const auto res = top_k(index, cfg, queries[i].query);
        runs[i] = format_run(queries[i].qid, res.results, index.collection());
    });
    for (const auto& r : runs) std::cout << r;
    return 0;
}

struct BenchFlags {
    fs::path index;
    fs::path queries;
    std::string k = "10";
    std::string mode = "or";
    MeasureFlags measure;
    std::string estimators;
    fs::path csv;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const BenchFlags& f) {
    const auto index = Index::load(f.index);
    std::vector<std::size_t> ks;
    for (const auto& item : split_list(f.k)) {
        std::size_t used = 0;
        const auto k = std::stoull(item, &used);
        if (used != item.size() || k == 0) throw std::invalid_argument("bad k '" + item + "'");
        ks.push_back(k);
    }
    if (ks.empty()) throw std::invalid_argument("--k needs at least one value");

    std::vector<Estimator> estimators;
    if (f.estimators.empty()) {
        for (auto e : {Estimator::e0, Estimator::e1, Estimator::e2})
            if (!(index.variant() == Variant::d && e == Estimator::e2)) estimators.push_back(e);
    } else {
        for (const auto& item : split_list(f.estimators)) estimators.push_back(parse_estimator(item));
    }

    SearchConfig base;
    base.mode = parse_mode(f.mode);
    base.measure = f.measure.params();
    base.variant = index.variant();
    const auto queries = load_queries(f.queries, index, false, 0);
    for (auto e : estimators) {
        base.estimator = e;
        for (const auto& q : queries) check_compatible(index, base, q.query);
    }

    std::ofstream csv(f.csv, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + f.csv.string());
    csv << "qid,k,mode,measure,estimator,states,exhaustive_states,percent,elapsed_us\n";
    char percent[32];
    for (const auto& q : queries) {
        for (auto k : ks) {
            for (auto e : estimators) {
                SearchConfig cfg = base;
                cfg.k = k;
                cfg.estimator = e;
                const auto start = std::chrono::steady_clock::now();
                const auto res = top_k(index, cfg, q.query);
                const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - start);
                const auto all = exhaustive_states(index, cfg, q.query);
                const double pct = all == 0 ? 0.0 : 100.0 * static_cast<double>(res.stats.states_processed) / all;
                std::snprintf(percent, sizeof percent, "%.6f", pct);
                csv << q.qid << ',' << k << ',' << f.mode << ',' << f.measure.measure << ',' << to_string(e) << ','
                    << res.stats.states_processed << ',' << all << ',' << percent << ',' << elapsed.count() << '\n';
            }
        }
    }
    csv.flush();
    if (!csv) throw std::runtime_error("error writing " + f.csv.string());
    return 0;
}

int cmd_stats(const fs::path& dir) {
    const auto index = Index::load(dir);
    const auto manifest = Index::read_manifest(dir);
    const auto& c = index.collection();
    std::cout << "variant " << to_string(index.variant()) << ", documents " << c.num_docs() << ", tokens " << c.size()
              << ", symbols " << c.vocabulary().size() << "\n";
    const auto raw = raw_text_bytes(c);
    std::cout << "raw token sequence " << static_cast<std::uint64_t>(std::ceil(raw)) << " bytes\n";
    print_components(std::cout, manifest, raw);
    return 0;
}

int cmd_mwe_parse(const fs::path& dir, const std::string& query, double threshold) {
    const auto index = Index::load(dir);
    std::cout << format_query_text(mwe_parse(index, parse_query_text(query), threshold)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-k document retrieval over a self-index"};
    app.require_subcommand(1);

    fs::path build_input, build_output;
    std::string build_variant = "dr";
    auto* build = app.add_subcommand("build", "Build an index from a text file or a directory");
    build->add_option("--input", build_input, "one document per line, or a directory of files")->required();
    build->add_option("--output", build_output, "index directory")->required();
    build->add_option("--variant", build_variant, "d, dr or d1r1")->check(CLI::IsMember({"d", "dr", "d1r1"}));

    QueryFlags qf;
    auto* query = app.add_subcommand("query", "Answer a query file, writing a TREC run to stdout");
    query->add_option("--index", qf.index)->required();
    query->add_option("--queries", qf.queries, "qid<TAB>body per line")->required();
    query->add_option("--k", qf.k)->check(CLI::PositiveNumber);
    query->add_option("--mode", qf.mode)->check(CLI::IsMember({"or", "and"}));
    add_measure_flags(query, qf.measure);
    query->add_option("--estimator", qf.estimator)->check(CLI::IsMember({"e0", "e1", "e2"}));
    query->add_flag("--mwe", qf.mwe, "merge multi-word expressions into phrases first");
    query->add_option("--threshold", qf.threshold, "association threshold for --mwe");
    query->add_option("--threads", qf.threads, "worker threads")->check(CLI::PositiveNumber);

    BenchFlags bf;
    auto* bench = app.add_subcommand("bench", "Count traversal states per estimator");
    bench->add_option("--index", bf.index)->required();
    bench->add_option("--queries", bf.queries)->required();
    bench->add_option("--k", bf.k, "comma-separated list");
    bench->add_option("--mode", bf.mode)->check(CLI::IsMember({"or", "and"}));
    add_measure_flags(bench, bf.measure);
    bench->add_option("--estimator", bf.estimators, "comma-separated list; default all the index supports");
    bench->add_option("--csv", bf.csv)->required();

    fs::path stats_index;
    auto* stats = app.add_subcommand("stats", "Component sizes of an index");
    stats->add_option("--index", stats_index)->required();

    fs::path mwe_index;
    std::string mwe_query;
    double mwe_threshold = 10.0;
    auto* mwe = app.add_subcommand("mwe-parse", "Show how a query splits into multi-word expressions");
    mwe->add_option("--index", mwe_index)->required();
    mwe->add_option("--query", mwe_query)->required();
    mwe->add_option("--threshold", mwe_threshold);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(build_input, build_output, build_variant);
        if (*query) return cmd_query(qf);
        if (*bench) return cmd_bench(bf);
        if (*stats) return cmd_stats(stats_index);
        if (*mwe) return cmd_mwe_parse(mwe_index, mwe_query, mwe_threshold);
    } catch (const incompatible_config& e) {
        std::cerr << "surf: " << e.what() << "\n";
        return kExitIncompatible;
    } catch (const std::exception& e) {
        std::cerr << "surf: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
