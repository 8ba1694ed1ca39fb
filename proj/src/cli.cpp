#include "freefft/cli.hpp"

#include "freefft/catalg.hpp"
#include "freefft/classical.hpp"
#include "freefft/comod.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace freefft::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(cur);
    return out;
}

std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

FMatrix parse_f_json(const std::string& text, int t)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageFailure(std::string("F: malformed JSON: ") + e.what());
    }
    if (!doc.is_array() || static_cast<int>(doc.size()) != t)
        throw UsageFailure("F: expected a " + std::to_string(t) + "x" + std::to_string(t) + " array");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : doc) {
        if (!row.is_array() || static_cast<int>(row.size()) != t)
            throw UsageFailure("F: every row must have " + std::to_string(t) + " entries");
        std::vector<Rational> r;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw UsageFailure("F: entries must be strings \"p\" or \"p/q\"");
            try {
                r.push_back(parse_rational(cell.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw UsageFailure(std::string("F: ") + e.what());
            }
        }
        rows.push_back(std::move(r));
    }
    try {
        return FMatrix(RationalMatrix::from_dense(rows));
    } catch (const std::domain_error&) {
        throw UsageFailure("F is singular");
    }
}

FMatrix parse_f(const std::string& spec, int t)
{
    if (t < 1)
        throw UsageFailure("t must be positive");
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in)
            throw UsageFailure("F: cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_f_json(ss.str(), t);
    }
    if (spec == "preset:identity")
        return FMatrix::identity(t);
    if (spec == "preset:jordan")
        return FMatrix::jordan(t);
    if (spec.rfind("preset:diag:", 0) == 0) {
        std::vector<Rational> entries;
        for (const auto& part : split(spec.substr(12), ',')) {
            try {
                entries.push_back(parse_rational(part));
            } catch (const std::invalid_argument& e) {
                throw UsageFailure(std::string("F: ") + e.what());
            }
        }
        if (static_cast<int>(entries.size()) != t)
            throw UsageFailure("F: diag preset needs " + std::to_string(t) + " entries");
        try {
            return FMatrix::diagonal(entries);
        } catch (const std::domain_error&) {
            throw UsageFailure("F is singular");
        }
    }
    throw UsageFailure("F: unknown source '" + spec + "' (use preset:identity, preset:diag:a,b,..., preset:jordan or file:path)");
}

// ---------------------------------------------------------------------------

std::string Report::status() const
{
    bool inconclusive = false;
    for (const auto& c : cases) {
        if (c.status == "mismatch")
            return "mismatch";
        if (c.status != "certified")
            inconclusive = true;
    }
    return inconclusive ? "inconclusive" : "certified";
}

int Report::exit_code() const
{
    const auto s = status();
    if (s == "mismatch")
        return Mismatch;
    if (s == "inconclusive")
        return Inconclusive;
    return Certified;
}

std::string Report::to_json() const
{
    json doc;
    doc["schema"] = 1;
    doc["version"] = kVersion;
    doc["command"] = command;
    json params;
    params["m"] = m;
    params["n"] = n;
    params["t"] = t;
    params["F"] = json::parse(f);
    if (k)
        params["k"] = *k;
    else
        params["k"] = nullptr;
    if (d == "auto")
        params["d"] = "auto";
    else
        params["d"] = std::stoi(d);
    params["seed"] = seed;
    doc["params"] = params;
    json arr = json::array();
    for (const auto& c : cases) {
        json jc;
        jc["label"] = c.label;
        jc["bidegree"] = {c.i, c.j};
        jc["dim_coinv"] = c.dim_coinv;
        jc["dim_theta"] = c.dim_theta;
        jc["certified"] = c.certified;
        jc["witness_degree"] = c.witness_degree;
        jc["millis"] = c.millis;
        jc["status"] = c.status;
        if (!c.note.empty())
            jc["note"] = c.note;
        arr.push_back(jc);
    }
    doc["cases"] = arr;
    doc["status"] = status();
    return doc.dump(2) + "\n";
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << command << "  m=" << m << " n=" << n << " t=" << t << " F=" << f << "\n";
    const char* head[] = {"label", "bidegree", "dim_coinv", "dim_theta", "certified", "d", "millis", "status"};
    std::vector<std::vector<std::string>> rows;
    rows.emplace_back(std::begin(head), std::end(head));
    for (const auto& c : cases)
        rows.push_back({c.label, "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")",
                        std::to_string(c.dim_coinv), std::to_string(c.dim_theta), c.certified ? "yes" : "no",
                        std::to_string(c.witness_degree), std::to_string(c.millis), c.status});
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << (i == 0 ? std::left : std::right)
               << r[i];
        os << "\n";
    }
    for (const auto& c : cases)
        if (!c.note.empty())
            os << "note " << c.label << " (" << c.i << "," << c.j << "): " << c.note << "\n";
    os << "status: " << status() << "\n";
    return os.str();
}

std::string Report::to_csv() const
{
    std::ostringstream os;
    os << "label,i,j,dim_coinv,dim_theta,certified,witness_degree,millis,status\n";
    for (const auto& c : cases)
        os << c.label << "," << c.i << "," << c.j << "," << c.dim_coinv << "," << c.dim_theta << ","
           << (c.certified ? "true" : "false") << "," << c.witness_degree << "," << c.millis << "," << c.status
           << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

struct Options {
    int m = 1;
    int n = 1;
    int t = 1;
    std::string f = "preset:identity";
    std::optional<int> k;
    std::optional<int> i;
    std::optional<int> j;
    std::string d = "auto";
    std::optional<int> max_degree;
    std::uint64_t seed = 0;
    std::string format = "text";
    int jobs = 1;
    bool timings = false;
};

using Task = std::function<std::vector<Case>()>;

std::vector<Case> run_tasks(const std::vector<Task>& tasks, int jobs, bool timings)
{
    std::vector<std::vector<Case>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < tasks.size(); idx = next++) {
            try {
                auto t0 = std::chrono::steady_clock::now();
                results[idx] = tasks[idx]();
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                              .count();
                for (auto& c : results[idx])
                    c.millis = timings ? ms : 0;
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<Case> out;
    for (auto& r : results)
        out.insert(out.end(), r.begin(), r.end());
    std::stable_sort(out.begin(), out.end(), [](const Case& a, const Case& b) {
        return std::tie(a.label, a.i, a.j) < std::tie(b.label, b.i, b.j);
    });
    return out;
}

int truncation(const Options& o, int i, int j, int minimum)
{
    if (o.d == "auto")
        return std::max(auto_truncation(i, j), minimum);
    int d = 0;
    try {
        std::size_t pos = 0;
        d = std::stoi(o.d, &pos);
        if (pos != o.d.size())
            throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw UsageFailure("-d must be an integer or 'auto'");
    }
    if (d < minimum)
        throw UsageFailure("truncation d = " + std::to_string(d) + " is below the required " +
                           std::to_string(minimum) + " for bidegree (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
    return d;
}

std::vector<int> degree_list(const Options& o)
{
    if (o.k)
        return {*o.k};
    if (o.max_degree) {
        std::vector<int> ks;
        for (int k = 0; k <= *o.max_degree; ++k)
            ks.push_back(k);
        return ks;
    }
    throw UsageFailure("need -k or --max-degree");
}

std::vector<std::pair<int, int>> bidegree_list(const Options& o)
{
    if (o.i || o.j) {
        if (!(o.i && o.j))
            throw UsageFailure("-i and -j go together");
        return {{*o.i, *o.j}};
    }
    if (o.k)
        return {{*o.k, *o.k}};
    if (o.max_degree) {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i <= *o.max_degree; ++i)
            for (int j = 0; i + j <= *o.max_degree; ++j)
                out.emplace_back(i, j);
        return out;
    }
    throw UsageFailure("need -i/-j, -k or --max-degree");
}

Case fft_case(const CoactionContext& ctx, const std::string& label, int k, int d)
{
    Case c;
    c.label = label;
    c.i = c.j = k;
    c.witness_degree = d;
    try {
        auto r = certify_fft(ctx, k, d);
        c.dim_coinv = r.computed.dim();
        c.dim_theta = r.theta_rank;
        c.certified = r.certified;
        if (r.certified)
            c.status = "certified";
        else if (!r.image_contained || r.theta_rank != r.expected_dim)
            c.status = "mismatch";
        else
            c.status = "inconclusive";
        if (!r.certified)
            c.note = "expected dimension " + std::to_string(r.expected_dim);
    } catch (const InternalError& e) {
        c.status = "mismatch";
        c.note = e.what();
    }
    return c;
}

std::vector<Task> certify_tasks(const Options& o, std::shared_ptr<const CoactionContext> ctx)
{
    std::vector<Task> tasks;
    for (int k : degree_list(o)) {
        const int d = truncation(o, k, k, 2 * k);
        tasks.push_back([ctx, k, d] { return std::vector<Case>{fft_case(*ctx, "fft", k, d)}; });
    }
    return tasks;
}

std::vector<Task> coinvariant_tasks(const Options& o, std::shared_ptr<const CoactionContext> ctx)
{
    std::vector<Task> tasks;
    for (auto [i, j] : bidegree_list(o)) {
        const int d = truncation(o, i, j, i + j);
        if (i == j) {
            tasks.push_back([ctx, i, d] { return std::vector<Case>{fft_case(*ctx, "coinv", i, d)}; });
            continue;
        }
        tasks.push_back([ctx, i, j, d] {
            Case c;
            c.label = "coinv";
            c.i = i;
            c.j = j;
            c.witness_degree = d;
            auto space = coinvariants(*ctx, i, j, d);
            auto cert = off_diagonal_vanish(ctx->m(), ctx->n(), ctx->t(), i, j, &ctx->hopf().f());
            c.dim_coinv = space.dim();
            c.certified = cert.valid() && space.dim() == 0;
            c.status = c.certified ? "certified" : "mismatch";
            if (!cert.valid())
                c.note = "grading certificate failed";
            else if (space.dim() != 0)
                c.note = "nonzero coinvariants off the diagonal";
            return std::vector<Case>{c};
        });
    }
    return tasks;
}

std::vector<Task> theta_tasks(const Options& o)
{
    std::vector<Task> tasks;
    const int m = o.m, n = o.n, t = o.t;
    for (int k : degree_list(o)) {
        tasks.push_back([m, n, t, k] {
            Case c;
            c.label = "theta";
            c.i = c.j = k;
            c.dim_coinv = ipow(static_cast<std::size_t>(m * n), k);
            c.dim_theta = rank(theta_matrix(m, n, t, k));
            c.certified = c.dim_coinv == c.dim_theta;
            c.status = c.certified ? "certified" : "mismatch";
            return std::vector<Case>{c};
        });
    }
    return tasks;
}

std::vector<Task> intertwiner_tasks(const Options& o, std::shared_ptr<const CoactionContext> ctx)
{
    std::vector<Task> tasks;
    for (auto [i, j] : bidegree_list(o)) {
        const int d = truncation(o, i, j, i + j);
        tasks.push_back([ctx, i, j, d] {
            const auto& h = ctx->hopf();
            Case c;
            c.label = "hom";
            c.i = i;
            c.j = j;
            c.witness_degree = d;
            c.dim_coinv = intertwiner_space(h, ctx->m(), ctx->n(), i, j, d).size();
            c.dim_theta = i == j ? ipow(static_cast<std::size_t>(ctx->m() * ctx->n()), i) : 0;
            bool exact = true;
            if (i != j) {
                exact = hom_off_diagonal_vanish(h, ctx->m(), ctx->n(), i, j).valid();
                if (!exact)
                    c.note = "grading certificate failed";
            }
            if (c.dim_coinv > c.dim_theta || !exact)
                c.status = "mismatch";
            else if (c.dim_coinv < c.dim_theta)
                c.status = "inconclusive";
            else
                c.status = "certified";
            c.certified = c.status == "certified";
            return std::vector<Case>{c};
        });
    }
    return tasks;
}

std::vector<Task> hopf_tasks(const Options& o, std::shared_ptr<const CoactionContext> ctx)
{
    const int d = o.d == "auto" ? 4 : truncation(o, 2, 2, 4);
    return {[ctx, d] {
        auto r = check_hopf_compat(ctx->hopf(), d);
        std::vector<Case> out;
        for (const auto& e : r.relations) {
            Case c;
            c.label = e.label;
            c.witness_degree = d;
            c.certified = e.counit_zero && e.delta == Certification::CertifiedZero &&
                          e.antipode == Certification::CertifiedZero;
            c.status = !e.counit_zero ? "mismatch" : c.certified ? "certified" : "inconclusive";
            if (!e.counit_zero)
                c.note = "counit does not vanish";
            out.push_back(c);
        }
        for (auto [label, ok] : {std::pair<const char*, bool>{"~coassociative", r.coassociative},
                                 std::pair<const char*, bool>{"~counital", r.counital}}) {
            Case c;
            c.label = label;
            c.certified = ok;
            c.status = ok ? "certified" : "mismatch";
            out.push_back(c);
        }
        return out;
    }};
}

std::vector<Task> classical_tasks(const Options& o)
{
    const int m = o.m, n = o.n, t = o.t;
    int top = 0;
    if (o.max_degree)
        top = *o.max_degree;
    else if (o.k)
        top = *o.k;
    else
        throw UsageFailure("need --max-degree or -k");
    auto rows = [](const char* label, const ClassicalReport& r, bool fft1) {
        std::vector<Case> out;
        for (const auto& deg : r.degrees) {
            Case c;
            c.label = label;
            c.i = c.j = deg.k;
            c.dim_coinv = deg.lhs_dim;
            c.dim_theta = deg.rhs_dim;
            c.certified = deg.equal && deg.odd_vanish;
            c.status = c.certified ? "certified" : "mismatch";
            if (!deg.odd_vanish)
                c.note = "invariants in odd total degree";
            else if (!deg.equal)
                c.note = fft1 ? "invariants differ from the image" : "kernel differs from the minors";
            out.push_back(c);
        }
        return out;
    };
    return {[=] { return rows("fft1", fft1_check(m, n, t, top), true); },
            [=] { return rows("fft2", fft2_check(m, n, t, top), false); }};
}

std::vector<Task> correspondence_tasks(const Options& o, std::shared_ptr<const CoactionContext> ctx)
{
    std::vector<Task> tasks;
    for (int k : degree_list(o)) {
        const int d = truncation(o, k, k, 2 * k);
        tasks.push_back([ctx, k, d] {
            auto r = main_correspondence_check(*ctx, k, d);
            Case c;
            c.label = "psi";
            c.i = c.j = k;
            c.witness_degree = d;
            c.dim_coinv = r.matches;
            c.dim_theta = r.psi_rank;
            c.certified = r.passed();
            bool undecided = false;
            for (const auto& msg : r.mismatches)
                if (msg.find("not certified") != std::string::npos)
                    undecided = true;
            c.status = c.certified ? "certified" : undecided && r.psi_rank == r.expected_rank ? "inconclusive"
                                                                                              : "mismatch";
            if (!r.mismatches.empty())
                c.note = r.mismatches.front();
            else if (r.end_u_dim != 1)
                c.note = "dim End(U) = " + std::to_string(r.end_u_dim);
            return std::vector<Case>{c};
        });
    }
    return tasks;
}

const char* kTruncationHelp =
    "Truncation degree d of the ideal, or 'auto'. auto = i+j+2 for bidegree (i,j) "
    "(2k+2 for bidegree (k,k)); hopf-check uses 4. Every result is certified only "
    "from ideal elements with witnesses of degree <= d";

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("-m", o.m, "Rows of the X matrix (copies of U in the source)")->check(CLI::PositiveNumber);
    sub->add_option("-n", o.n, "Columns of the X matrix (copies of U in the target)")->check(CLI::PositiveNumber);
    sub->add_option("-t", o.t, "Size of F")->check(CLI::PositiveNumber);
    sub->add_option("--F", o.f,
                    "F source: preset:identity, preset:diag:a,b,..., preset:jordan or file:path "
                    "(JSON t x t array of \"p/q\" strings)");
    sub->add_option("-k", o.k, "Degree k (bidegree (k,k))")->check(CLI::NonNegativeNumber);
    sub->add_option("-d", o.d, kTruncationHelp);
    sub->add_option("--max-degree", o.max_degree, "Run every degree up to this bound")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Seed echoed into the report");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--jobs", o.jobs, "Run independent cases on N threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timings", o.timings, "Record wall-clock millis (reports are then not reproducible)");
}

void add_bidegree(CLI::App* sub, Options& o)
{
    sub->add_option("-i", o.i, "Source degree")->check(CLI::NonNegativeNumber);
    sub->add_option("-j", o.j, "Target degree")->check(CLI::NonNegativeNumber);
}

} // namespace

RunResult run(const std::vector<std::string>& args)
{
    RunResult result;
    Options o;
    CLI::App app{"Certification workbench for the free first fundamental theorem of invariant theory"};
    app.name(args.empty() ? "freefft" : args[0]);
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::vector<std::pair<std::string, std::string>> commands = {
        {"certify-fft", "Squeeze-certify dim of coinvariants in bidegree (k,k) = (mn)^k"},
        {"coinvariants", "Coinvariants in bidegree (i,j); off-diagonal ones via the grading certificate"},
        {"theta-rank", "Rank of theta in degree k against (mn)^k"},
        {"intertwiners", "dim Hom((U^m)^(x)i, (U^n)^(x)j) of H(F)-comodules"},
        {"hopf-check", "Relations of H(F) generate a Hopf ideal"},
        {"classical", "Commutative FFT/SFT: invariants vs image of theta*, kernel vs minors"},
        {"correspondence", "Coinvariants theta(w) turned into morphisms agree with psi(w)"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, o);
        if (name == "coinvariants" || name == "intertwiners")
            add_bidegree(sub, o);
        subs[name] = sub;
    }

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    if (argv.empty())
        argv.push_back("freefft");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        result.out = out.str();
        result.err = err.str();
        result.exit_code = code == 0 ? Certified : UsageError;
        return result;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            command = name;

    try {
        if (const char* dir = std::getenv("COINV_CACHE_DIR"); dir && *dir)
            QuotientCache::global().set_persist_dir(dir);

        FMatrix f = parse_f(o.f, o.t);
        Report rep;
        rep.command = command;
        rep.m = o.m;
        rep.n = o.n;
        rep.t = o.t;
        rep.f = f.to_string();
        rep.k = o.k;
        rep.d = o.d;
        rep.seed = o.seed;
        if (o.d != "auto")
            truncation(o, 0, 0, 0);

        std::shared_ptr<const CoactionContext> ctx;
        if (command != "classical" && command != "theta-rank")
            ctx = std::make_shared<const CoactionContext>(o.m, o.n, f);

        std::vector<Task> tasks;
        if (command == "certify-fft")
            tasks = certify_tasks(o, ctx);
        else if (command == "coinvariants")
            tasks = coinvariant_tasks(o, ctx);
        else if (command == "theta-rank")
            tasks = theta_tasks(o);
        else if (command == "intertwiners")
            tasks = intertwiner_tasks(o, ctx);
        else if (command == "hopf-check")
            tasks = hopf_tasks(o, ctx);
        else if (command == "classical")
            tasks = classical_tasks(o);
        else
            tasks = correspondence_tasks(o, ctx);

        rep.cases = run_tasks(tasks, o.jobs, o.timings);
        if (o.format == "json")
            result.out = rep.to_json();
        else if (o.format == "csv")
            result.out = rep.to_csv();
        else
            result.out = rep.to_text();
        result.exit_code = rep.exit_code();
    } catch (const UsageFailure& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = UsageError;
    } catch (const InternalError& e) {
        result.err = std::string("internal error: ") + e.what() + "\n";
        result.exit_code = Mismatch;
    } catch (const std::invalid_argument& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = UsageError;
    } catch (const std::out_of_range& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = UsageError;
    }
    return result;
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    auto r = run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}

} // namespace freefft::cli
