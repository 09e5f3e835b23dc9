#include <mpmat/bench.hpp>

#include <mpmat/counting_scalar.hpp>
#include <mpmat/generators.hpp>
#include <mpmat/lu.hpp>
#include <mpmat/matrix_io.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace mpmat::bench {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::size_t parse_positive(std::string_view s, std::string_view whole)
{
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
        throw UsageError("invalid list '" + std::string(whole) + "': '" + std::string(s) +
                         "' is not a positive integer");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

MatmulAlgorithm algorithm_from(const std::string& name)
{
    const auto a = parse_matmul_algorithm(name);
    if (!a) {
        throw UsageError("unknown algorithm '" + name + "'");
    }
    return *a;
}

void emit(std::ostream& csv, std::vector<BenchRecord>& rows, BenchRecord r)
{
    csv << csv_row(r) << '\n' << std::flush;
    rows.push_back(std::move(r));
}

// ---------------------------------------------------------------- matmul

template <Scalar S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> matmul_inputs(const RunConfig& c, std::size_t n)
{
    if (c.matrix == "random") {
        return {generate_random<S>(n, c.seed), generate_random<S>(n, c.seed + 1)};
    }
    return generate_bench_pair<S>(n);
}

template <Scalar S>
DenseMatrix<S> matmul_reference(const RunConfig& c, std::size_t n, const DenseMatrix<S>& a,
                                const DenseMatrix<S>& b)
{
    if (c.matrix == "random") {
        return matmul_simple(a, b);
    }
    return exact_bench_matrix<S>(n);
}

template <Scalar T>
void save_product(const RunConfig& c, const DenseMatrix<T>& product)
{
    if (c.save.empty()) {
        return;
    }
    std::ofstream out(c.save);
    if (!out) {
        throw std::runtime_error("cannot write '" + c.save + "'");
    }
    write_matrix(out, product);
}

template <Scalar T>
void matmul_row(const RunConfig& c, BenchRecord& r, const MatmulPlan& plan)
{
    const std::size_t n = r.n;
    if (c.count_ops) {
        using CS = CountingScalar<T>;
        const auto [a, b] = matmul_inputs<CS>(c, n);
        CS::counters().reset();
        const auto product = multiply(a, b, plan);
        const OpCounts ops = CS::counters().snapshot();
        r.mul_count = ops.mul;
        r.add_count = ops.add;
        r.reps = 1;
        if (c.verify) {
            r.max_rel_error =
                to_double(max_componentwise_rel_error(product, matmul_reference(c, n, a, b)));
        }
        return;
    }
    const auto [a, b] = matmul_inputs<T>(c, n);
    DenseMatrix<T> product;
    std::vector<double> times;
    for (std::size_t rep = 0; rep < c.reps; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        product = multiply(a, b, plan);
        times.push_back(seconds_since(start));
    }
    r.seconds_median = median(times);
    if (c.verify) {
        r.max_rel_error =
            to_double(max_componentwise_rel_error(product, matmul_reference(c, n, a, b)));
    }
    save_product(c, product);
}

// -------------------------------------------------------------------- lu

template <Scalar S>
DenseMatrix<S> lu_matrix(const RunConfig& c, std::size_t n)
{
    if (c.matrix == "lotkin") {
        return generate_lotkin<S>(n);
    }
    return generate_random<S>(n, c.seed);
}

template <Scalar S>
LuFactors<S> factor(const DenseMatrix<S>& a, const std::string& update, const LuPlan& plan)
{
    if (update == "unblocked") {
        return lu_unblocked(a);
    }
    if (update == "rowwise") {
        return lu_rowwise(a, plan.workers);
    }
    return lu_blocked(a, plan);
}

template <Scalar T>
void lu_row(const RunConfig& c, BenchRecord& r, const std::string& update, const LuPlan& plan)
{
    const std::size_t n = r.n;
    if (c.count_ops) {
        using CS = CountingScalar<T>;
        const auto a = lu_matrix<CS>(c, n);
        const auto x = counting_vector<CS>(n);
        const auto b = build_rhs(a, x);
        CS::counters().reset();
        const auto f = factor(a, update, plan);
        const auto x_hat = lu_substitute(f, b);
        const OpCounts ops = CS::counters().snapshot();
        r.mul_count = ops.mul;
        r.add_count = ops.add;
        r.reps = 1;
        r.max_rel_error = to_double(max_componentwise_rel_error(x_hat, x));
        return;
    }
    const auto a = lu_matrix<T>(c, n);
    const auto x = counting_vector<T>(n);
    const auto b = build_rhs(a, x);
    std::vector<double> times;
    DenseMatrix<T> x_hat;
    for (std::size_t rep = 0; rep < c.reps; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const auto f = factor(a, update, plan);
        x_hat = lu_substitute(f, b);
        times.push_back(seconds_since(start));
    }
    r.seconds_median = median(times);
    r.max_rel_error = to_double(max_componentwise_rel_error(x_hat, x));
}

template <class Fn>
void with_precision(const std::string& prec, Fn&& fn)
{
    if (prec == "dd") {
        fn(DoubleDouble{});
    } else if (prec == "qd") {
        fn(QuadDouble{});
    } else {
        throw UsageError("unknown precision '" + prec + "'");
    }
}

// ---------------------------------------------------------------- verify

struct CheckResult {
    bool pass;
    std::string detail;
};

std::string sci(double v) { return format_double(v); }

template <Scalar T>
double rel(const DenseMatrix<T>& x, const DenseMatrix<T>& ref)
{
    return to_double(max_componentwise_rel_error(x, ref));
}

const std::vector<MatmulAlgorithm>& all_algorithms()
{
    static const std::vector<MatmulAlgorithm> algos{MatmulAlgorithm::Simple,
                                                    MatmulAlgorithm::Block,
                                                    MatmulAlgorithm::Strassen,
                                                    MatmulAlgorithm::Winograd};
    return algos;
}

// DD arithmetic against QD evaluation of the same operands.
CheckResult check_scalar_accuracy(std::uint64_t seed)
{
    SplitMix64 rng(seed);
    double worst = 0.0;
    auto track = [&](const DoubleDouble& got, const QuadDouble& ref) {
        const QuadDouble diff = QuadDouble(got) - ref;
        worst = std::max(worst, abs(diff).to_double() / abs(ref).to_double());
    };
    for (int i = 0; i < 20000; ++i) {
        const DoubleDouble a = detail::random_unit<DoubleDouble>(rng) + DoubleDouble(0.5);
        const DoubleDouble b = detail::random_unit<DoubleDouble>(rng) - DoubleDouble(1.5);
        const QuadDouble qa(a);
        const QuadDouble qb(b);
        track(a + b, qa + qb);
        track(a - b, qa - qb);
        track(a * b, qa * qb);
        track(a / b, qa / qb);
        track(sqrt(a), sqrt(qa));
    }
    const double bound = 8 * DoubleDouble::epsilon;
    return {worst <= bound, "max DD error " + sci(worst) + " <= " + sci(bound)};
}

template <Scalar T>
double oracle_equivalence_worst(std::uint64_t seed, const std::vector<std::size_t>& sizes)
{
    double worst_ratio = 0.0;
    for (std::size_t n : sizes) {
        const auto a = generate_random<T>(n, n, seed + n, 0.0, 1.0);
        const auto b = generate_random<T>(n, n, seed + 1000 + n, 0.0, 1.0);
        const auto ref = matmul_simple(a, b);
        for (auto algo : all_algorithms()) {
            for (std::size_t n_min : {std::size_t{4}, std::size_t{32}}) {
                const auto c = multiply(a, b, MatmulPlan{algo, 8, n_min, 1});
                const double bound = 4.0 * static_cast<double>(n) * epsilon_of<T>();
                worst_ratio = std::max(worst_ratio, rel(c, ref) / bound);
            }
        }
    }
    return worst_ratio;
}

CheckResult check_oracle_equivalence(std::uint64_t seed)
{
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= 24; ++n) {
        sizes.push_back(n);
    }
    sizes.push_back(33);
    const double dd = oracle_equivalence_worst<DoubleDouble>(seed, sizes);
    const double qd = oracle_equivalence_worst<QuadDouble>(seed, sizes);
    const double worst = std::max(dd, qd);
    return {worst <= 1.0, "worst error / (4 n eps) = " + sci(worst) + " (dd " + sci(dd) +
                              ", qd " + sci(qd) + ")"};
}

CheckResult check_integer_exactness(std::uint64_t seed)
{
    SplitMix64 rng(seed);
    for (std::size_t n : {3, 17, 40}) {
        DenseMatrix<DoubleDouble> a(n, n);
        DenseMatrix<DoubleDouble> b(n, n);
        for (auto* m : {&a, &b}) {
            for (auto& x : m->elements()) {
                x = DoubleDouble::from_integer(static_cast<std::int64_t>(rng.next() % 201) - 100);
            }
        }
        const auto ref = matmul_simple(a, b);
        for (auto algo : all_algorithms()) {
            if (!(multiply(a, b, MatmulPlan{algo, 5, 4, 1}) == ref)) {
                return {false, std::string(to_string(algo)) + " differs at n=" + std::to_string(n)};
            }
        }
    }
    return {true, "all algorithms exact on integer inputs"};
}

CheckResult check_closed_form()
{
    const std::size_t n = 128;
    const auto [a, b] = generate_bench_pair<DoubleDouble>(n);
    const auto exact = exact_bench_matrix<DoubleDouble>(n);
    double worst = 0.0;
    for (auto algo : all_algorithms()) {
        worst = std::max(worst, rel(multiply(a, b, MatmulPlan{algo, 32, 32, 1}), exact));
    }
    return {worst <= 1e-28, "DD n=128 max error " + sci(worst) + " <= 1e-28"};
}

OpCounts count_bench(std::size_t n, MatmulAlgorithm algo)
{
    using CS = CountingScalar<double>;
    const auto [a, b] = generate_bench_pair<CS>(n);
    CS::counters().reset();
    multiply(a, b, MatmulPlan{algo, 32, 32, 1});
    return CS::counters().snapshot();
}

CheckResult check_count_law()
{
    const auto s = count_bench(256, MatmulAlgorithm::Strassen);
    const auto w = count_bench(256, MatmulAlgorithm::Winograd);
    const auto b = count_bench(256, MatmulAlgorithm::Block);
    const bool ok = s.mul == 11239424 && w.mul == 11239424 && b.mul == 16777216;
    return {ok, "n=256 muls: strassen " + std::to_string(s.mul) + ", winograd " +
                    std::to_string(w.mul) + ", block " + std::to_string(b.mul)};
}

CheckResult check_addition_advantage()
{
    const auto s = count_bench(128, MatmulAlgorithm::Strassen);
    const auto w = count_bench(128, MatmulAlgorithm::Winograd);
    return {s.mul == w.mul && w.add < s.add,
            "n=128 muls " + std::to_string(s.mul) + "/" + std::to_string(w.mul) + ", adds " +
                std::to_string(s.add) + " (strassen) vs " + std::to_string(w.add) + " (winograd)"};
}

CheckResult check_determinism(std::uint64_t seed)
{
    {
        const auto a = generate_random<DoubleDouble>(256, seed);
        const auto b = generate_random<DoubleDouble>(256, seed + 1);
        const MatmulPlan p1{MatmulAlgorithm::Strassen, 32, 32, 1};
        const MatmulPlan p8{MatmulAlgorithm::Strassen, 32, 32, 8};
        if (!(multiply(a, b, p1) == multiply(a, b, p8))) {
            return {false, "strassen n=256 differs between 1 and 8 workers"};
        }
    }
    const auto a = generate_random<DoubleDouble>(75, seed + 2);
    const auto b = generate_random<DoubleDouble>(75, seed + 3);
    for (auto algo : all_algorithms()) {
        const auto ref = multiply(a, b, MatmulPlan{algo, 8, 8, 1});
        for (std::size_t w : {2, 4, 8}) {
            if (!(multiply(a, b, MatmulPlan{algo, 8, 8, w}) == ref)) {
                return {false, std::string(to_string(algo)) + " n=75 differs at " +
                                   std::to_string(w) + " workers"};
            }
        }
    }
    const auto m = generate_random<DoubleDouble>(96, seed + 4);
    LuPlan plan;
    plan.n_min = 16;
    plan.update.algorithm = MatmulAlgorithm::Winograd;
    const auto ref = lu_blocked(m, plan);
    for (std::size_t w : {2, 4, 8}) {
        plan.workers = w;
        if (!(lu_blocked(m, plan).lu == ref.lu) || !(lu_rowwise(m, w).lu == lu_unblocked(m).lu)) {
            return {false, "LU differs at " + std::to_string(w) + " workers"};
        }
    }
    return {true, "bitwise equal for workers 1, 2, 4, 8"};
}

// Diagonal dominance keeps pivot growth small, so the factors themselves are
// well conditioned and the blocked/unblocked distance reflects only rounding.
CheckResult check_blocked_lu(std::uint64_t seed)
{
    const std::size_t n = 128;
    auto a = generate_random<DoubleDouble>(n, seed);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) += DoubleDouble(static_cast<double>(n));
    }
    const auto ref = lu_unblocked(a);
    const DenseMatrix<DoubleDouble> ref_l = ref.lower();
    const DenseMatrix<DoubleDouble> ref_u = ref.upper();
    double worst = 0.0;
    for (std::size_t alpha : {1, 2, 3}) {
        for (auto algo : {MatmulAlgorithm::Block, MatmulAlgorithm::Strassen,
                          MatmulAlgorithm::Winograd}) {
            LuPlan plan;
            plan.alpha = alpha;
            plan.update.algorithm = algo;
            const auto f = lu_blocked(a, plan);
            for (const auto& [x, r] : {std::pair{f.lower(), ref_l}, std::pair{f.upper(), ref_u}}) {
                const auto d = norm_inf(mat_sub(x, r)) / norm_inf(r);
                worst = std::max(worst, d.to_double());
            }
        }
    }
    const double bound = 10.0 * n * DoubleDouble::epsilon;
    return {worst <= bound, "diagonally dominant n=128 factor distance " + sci(worst) + " <= " + sci(bound)};
}

CheckResult check_update_independence(std::uint64_t seed)
{
    const std::size_t n = 128;
    const auto a = generate_random<DoubleDouble>(n, seed);
    const auto x = counting_vector<DoubleDouble>(n);
    const auto b = build_rhs(a, x);
    double lo = 0.0;
    double hi = 0.0;
    std::string trace;
    for (auto algo : {MatmulAlgorithm::Block, MatmulAlgorithm::Strassen,
                      MatmulAlgorithm::Winograd}) {
        LuPlan plan;
        plan.update.algorithm = algo;
        const double err = solve(a, b, plan, &x).max_rel_error->to_double();
        lo = trace.empty() ? err : std::min(lo, err);
        hi = std::max(hi, err);
        trace += (trace.empty() ? "" : ", ") + std::string(to_string(algo)) + " " + sci(err);
    }
    return {hi <= 10.0 * lo, "random n=128 solve errors: " + trace};
}

CheckResult check_lotkin_growth()
{
    double previous = 0.0;
    std::string trace;
    bool ok = true;
    for (std::size_t n : {4, 6, 8, 10, 12}) {
        const auto a = generate_lotkin<QuadDouble>(n);
        const auto x = counting_vector<QuadDouble>(n);
        LuPlan plan;
        plan.n_min = 2;
        const auto r = solve(a, build_rhs(a, x), plan, &x);
        const double err = r.max_rel_error->to_double();
        ok = ok && err >= previous;
        previous = err;
        trace += (trace.empty() ? "" : ", ") + sci(err);
    }
    return {ok, "QD errors n=4..12: " + trace};
}

template <Scalar T>
CheckResult check_stored_product_as(std::istream& in)
{
    const auto c = read_matrix<T>(in);
    if (c.rows() != c.cols()) {
        return {false, "stored product is not square"};
    }
    const std::size_t n = c.rows();
    const double err = rel(c, exact_bench_matrix<T>(n));
    const double bound = 4.0 * n * epsilon_of<T>();
    return {err <= bound, std::string(ScalarTraits<T>::name) + " n=" + std::to_string(n) +
                              " max error " + sci(err) + " <= " + sci(bound)};
}

CheckResult check_stored_product(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        return {false, "cannot read '" + path + "'"};
    }
    const std::string prec = peek_matrix_precision(in);
    if (prec == "dd") {
        return check_stored_product_as<DoubleDouble>(in);
    }
    if (prec == "qd") {
        return check_stored_product_as<QuadDouble>(in);
    }
    return {false, "unsupported precision '" + prec + "'"};
}

}  // namespace

std::vector<std::size_t> parse_size_list(std::string_view text)
{
    std::vector<std::size_t> out;
    if (trim(text).empty()) {
        throw UsageError("empty list");
    }
    for (std::string_view part : split(text, ',')) {
        const std::size_t dots = part.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_positive(part, text));
            continue;
        }
        const std::size_t lo = parse_positive(part.substr(0, dots), text);
        const std::size_t hi = parse_positive(part.substr(dots + 2), text);
        if (hi < lo) {
            throw UsageError("invalid range '" + std::string(part) + "'");
        }
        for (std::size_t v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<std::string> parse_word_list(std::string_view text)
{
    std::vector<std::string> out;
    for (std::string_view part : split(text, ',')) {
        part = trim(part);
        if (part.empty()) {
            throw UsageError("empty entry in list '" + std::string(text) + "'");
        }
        out.emplace_back(part);
    }
    return out;
}

void RunConfig::validate()
{
    if (subcommand != "matmul" && subcommand != "lu" && subcommand != "verify") {
        throw UsageError("unknown subcommand '" + subcommand + "'");
    }
    for (const auto& p : precisions) {
        if (p != "dd" && p != "qd") {
            throw UsageError("unknown precision '" + p + "' (expected dd or qd)");
        }
    }
    if (n_min < 2) {
        throw UsageError("--nmin must be >= 2");
    }
    if (block_size < 1) {
        throw UsageError("--bs must be >= 1");
    }
    if (reps < 1) {
        throw UsageError("--reps must be >= 1");
    }
    if (subcommand == "verify") {
        return;
    }
    if (sizes.empty()) {
        throw UsageError("--n is required");
    }
    if (subcommand == "matmul") {
        if (matrix.empty()) {
            matrix = "bench";
        }
        if (matrix != "bench" && matrix != "random") {
            throw UsageError("matmul --matrix must be bench or random");
        }
        if (algorithms.empty()) {
            algorithms = {"block"};
        }
        for (const auto& a : algorithms) {
            algorithm_from(a);
        }
        if (!save.empty()) {
            if (precisions.size() * sizes.size() * algorithms.size() * workers.size() != 1) {
                throw UsageError("--save needs a single precision, size, algorithm and worker count");
            }
            if (count_ops) {
                throw UsageError("--save cannot be combined with --count-ops");
            }
        }
        return;
    }
    if (matrix.empty()) {
        matrix = "random";
    }
    if (matrix != "random" && matrix != "lotkin") {
        throw UsageError("lu --matrix must be random or lotkin");
    }
    if (algorithms.empty()) {
        algorithms = {"block"};
    }
    for (const auto& a : algorithms) {
        if (a != "rowwise" && a != "unblocked") {
            algorithm_from(a);
        }
    }
    if (!save.empty()) {
        throw UsageError("--save is only available for matmul");
    }
}

std::string csv_header()
{
    return "experiment,precision,algorithm,n,bs,nmin,alpha,workers,reps,seconds_median,mul_count,"
           "add_count,max_rel_error";
}

std::string csv_row(const BenchRecord& r)
{
    std::ostringstream s;
    s << r.experiment << ',' << r.precision << ',' << r.algorithm << ',' << r.n << ',' << r.bs
      << ',' << r.nmin << ',';
    if (r.alpha) {
        s << *r.alpha;
    }
    s << ',' << r.workers << ',' << r.reps << ',';
    if (r.seconds_median) {
        s << format_double(*r.seconds_median);
    }
    s << ',';
    if (r.mul_count) {
        s << *r.mul_count;
    }
    s << ',';
    if (r.add_count) {
        s << *r.add_count;
    }
    s << ',';
    if (r.failed()) {
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        s << "error:" << msg;
    } else if (r.max_rel_error) {
        s << format_double(*r.max_rel_error);
    }
    return s.str();
}

double median(std::vector<double> samples)
{
    if (samples.empty()) {
        throw std::invalid_argument("median of no samples");
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

std::vector<BenchRecord> run_matmul(const RunConfig& c, std::ostream& csv)
{
    std::vector<BenchRecord> rows;
    csv << csv_header() << '\n';
    for (const auto& prec : c.precisions) {
        for (std::size_t n : c.sizes) {
            for (const auto& name : c.algorithms) {
                for (std::size_t w : c.workers) {
                    BenchRecord r;
                    r.experiment = "matmul-" + c.matrix;
                    r.precision = prec;
                    r.algorithm = name;
                    r.n = n;
                    r.bs = c.block_size;
                    r.nmin = c.n_min;
                    r.workers = w;
                    r.reps = c.reps;
                    try {
                        const MatmulPlan plan{algorithm_from(name), c.block_size, c.n_min, w};
                        with_precision(prec, [&]<class T>(T) { matmul_row<T>(c, r, plan); });
                    } catch (const std::exception& e) {
                        r.error = e.what();
                    }
                    emit(csv, rows, std::move(r));
                }
            }
        }
    }
    return rows;
}

std::vector<BenchRecord> run_lu(const RunConfig& c, std::ostream& csv)
{
    std::vector<BenchRecord> rows;
    csv << csv_header() << '\n';
    for (const auto& prec : c.precisions) {
        for (std::size_t n : c.sizes) {
            for (const auto& update : c.algorithms) {
                const bool baseline = update == "rowwise" || update == "unblocked";
                // Baselines ignore alpha, and the unblocked one ignores workers.
                const std::vector<std::size_t> alphas =
                    baseline ? std::vector<std::size_t>{0} : c.alphas;
                const std::vector<std::size_t> workers =
                    update == "unblocked" ? std::vector<std::size_t>{1} : c.workers;
                for (std::size_t alpha : alphas) {
                    for (std::size_t w : workers) {
                        BenchRecord r;
                        r.experiment = "lu-" + c.matrix;
                        r.precision = prec;
                        r.algorithm = update;
                        r.n = n;
                        r.bs = c.block_size;
                        r.nmin = c.n_min;
                        if (!baseline) {
                            r.alpha = alpha;
                        }
                        r.workers = w;
                        r.reps = c.reps;
                        try {
                            LuPlan plan;
                            plan.n_min = c.n_min;
                            plan.alpha = baseline ? 1 : alpha;
                            plan.workers = w;
                            if (!baseline) {
                                plan.update = MatmulPlan{algorithm_from(update), c.block_size,
                                                         c.n_min, w};
                            }
                            with_precision(prec,
                                           [&]<class T>(T) { lu_row<T>(c, r, update, plan); });
                        } catch (const std::exception& e) {
                            r.error = e.what();
                        }
                        emit(csv, rows, std::move(r));
                    }
                }
            }
        }
    }
    return rows;
}

bool run_verify(const RunConfig& c, std::ostream& report)
{
    const std::uint64_t seed = c.seed;
    std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
        {"scalar-accuracy", [&] { return check_scalar_accuracy(seed); }},
        {"oracle-equivalence", [&] { return check_oracle_equivalence(seed); }},
        {"integer-exactness", [&] { return check_integer_exactness(seed); }},
        {"closed-form", [] { return check_closed_form(); }},
        {"count-law", [] { return check_count_law(); }},
        {"addition-advantage", [] { return check_addition_advantage(); }},
        {"determinism", [&] { return check_determinism(seed); }},
        {"blocked-lu", [&] { return check_blocked_lu(seed); }},
        {"update-independence", [&] { return check_update_independence(seed); }},
        {"lotkin-growth", [] { return check_lotkin_growth(); }},
    };
    if (!c.product.empty()) {
        checks.emplace_back("stored-product", [&] { return check_stored_product(c.product); });
    }
    bool all = true;
    for (const auto& [name, run] : checks) {
        CheckResult res;
        try {
            res = run();
        } catch (const std::exception& e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        all = all && res.pass;
        report << (res.pass ? "PASS " : "FAIL ") << name << ": " << res.detail << '\n'
               << std::flush;
    }
    report << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all;
}

}  // namespace mpmat::bench
