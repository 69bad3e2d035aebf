#include "tori/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tori::contfrac {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
    return boost::multiprecision::gcd(boost::multiprecision::gcd(a, b), c);
}

void require_positive_entries(const std::vector<Int>& v, const char* what) {
    for (const Int& a : v) {
        if (a < 1) throw Error("invalid_quotient", std::string(what) + " entries must be >= 1");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticIrrational

void QuadraticIrrational::normalize() {
    if (r_ == 0) throw Error("invalid_argument", "denominator r must be nonzero");
    auto [free_part, square_part] = squarefree_decompose(d_);
    q_ *= square_part;
    d_ = free_part;
    if (d_ == 1 || d_ == 0) {  // sqrt(1) = 1, sqrt(0) = 0: value is rational
        if (d_ == 1) p_ += q_;
        q_ = 0;
    }
    if (q_ == 0) d_ = 1;
    if (r_ < 0) {
        p_ = -p_;
        q_ = -q_;
        r_ = -r_;
    }
    Int g = gcd3(boost::multiprecision::abs(p_), boost::multiprecision::abs(q_), r_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

QuadraticIrrational::QuadraticIrrational(Int p, Int q, Int r, std::int64_t d) {
    p_ = std::move(p);
    q_ = std::move(q);
    r_ = std::move(r);
    d_ = d;
    normalize();
    if (q_ == 0) throw Error("not_irrational", "value normalizes to a rational");
}

QuadraticIrrational QuadraticIrrational::from_parts(Int p, Int q, Int r, std::int64_t d) {
    QuadraticIrrational x;
    x.p_ = std::move(p);
    x.q_ = std::move(q);
    x.r_ = std::move(r);
    x.d_ = d;
    x.normalize();
    return x;
}

QuadraticIrrational QuadraticIrrational::rational(Int num, Int den) {
    return from_parts(std::move(num), 0, std::move(den), 1);
}

double QuadraticIrrational::value() const {
    if (is_imaginary()) throw Error("invalid_argument", "value is not real");
    return (to_double(p_) + to_double(q_) * std::sqrt(static_cast<double>(d_))) / to_double(r_);
}

std::complex<double> QuadraticIrrational::complex_value() const {
    if (d_ < 0) {
        double rr = to_double(r_);
        return {to_double(p_) / rr,
                to_double(q_) * std::sqrt(static_cast<double>(-d_)) / rr};
    }
    return {value(), 0.0};
}

QuadraticIrrational QuadraticIrrational::conjugate() const {
    return from_parts(p_, -q_, r_, d_);
}

Rational QuadraticIrrational::norm() const {
    return Rational(p_ * p_ - q_ * q_ * Int(d_), r_ * r_);
}

Rational QuadraticIrrational::trace_rational() const {
    return Rational(2 * p_, r_);
}

QuadraticIrrational QuadraticIrrational::operator-() const {
    return from_parts(-p_, -q_, r_, d_);
}

namespace {
// Arithmetic is defined when the surd parts live in the same field; a
// rational operand (q = 0) adopts the other operand's field.
std::int64_t common_field(const QuadraticIrrational& a, const QuadraticIrrational& b) {
    if (!a.is_irrational()) return b.d();
    if (!b.is_irrational()) return a.d();
    if (a.d() != b.d()) throw Error("field_mismatch", "operands lie in different quadratic fields");
    return a.d();
}
}  // namespace

QuadraticIrrational QuadraticIrrational::operator+(const QuadraticIrrational& o) const {
    std::int64_t d = common_field(*this, o);
    return from_parts(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, r_ * o.r_, d);
}

QuadraticIrrational QuadraticIrrational::operator-(const QuadraticIrrational& o) const {
    return *this + (-o);
}

QuadraticIrrational QuadraticIrrational::operator*(const QuadraticIrrational& o) const {
    std::int64_t d = common_field(*this, o);
    return from_parts(p_ * o.p_ + q_ * o.q_ * Int(d),
                      p_ * o.q_ + q_ * o.p_,
                      r_ * o.r_, d);
}

QuadraticIrrational QuadraticIrrational::inverse() const {
    // 1/x = r (p - q sqrt(d)) / (p^2 - q^2 d)
    Int denom = p_ * p_ - q_ * q_ * Int(d_);
    if (denom == 0) throw Error("invalid_argument", "inverse of zero");
    return from_parts(r_ * p_, -r_ * q_, denom, d_);
}

QuadraticIrrational QuadraticIrrational::operator/(const QuadraticIrrational& o) const {
    return *this * o.inverse();
}

// ---------------------------------------------------------------------------
// UnimodularMatrix

UnimodularMatrix::UnimodularMatrix(Int a_, Int b_, Int c_, Int d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    Int dt = det();
    if (dt != 1 && dt != -1) throw Error("not_unimodular", "determinant must be +1 or -1");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
}

UnimodularMatrix UnimodularMatrix::inverse() const {
    Int dt = det();
    return {d * dt, -b * dt, -c * dt, a * dt};
}

std::complex<double> UnimodularMatrix::apply(std::complex<double> z) const {
    std::complex<double> den = to_double(c) * z + to_double(d);
    if (std::abs(den) == 0.0) throw Error("degenerate_mobius", "c z + d vanishes");
    return (to_double(a) * z + to_double(b)) / den;
}

double UnimodularMatrix::apply(double x) const {
    double den = to_double(c) * x + to_double(d);
    if (den == 0.0) throw Error("degenerate_mobius", "c x + d vanishes");
    return (to_double(a) * x + to_double(b)) / den;
}

// ---------------------------------------------------------------------------
// ContinuedFraction

ContinuedFraction ContinuedFraction::finite(Int a0, std::vector<Int> tail) {
    require_positive_entries(tail, "tail");
    ContinuedFraction cf;
    cf.a0_ = std::move(a0);
    cf.tail_ = std::move(tail);
    return cf;
}

ContinuedFraction ContinuedFraction::periodic(Int a0, std::vector<Int> tail,
                                              std::vector<Int> period) {
    if (period.empty()) throw Error("invalid_argument", "period must be nonempty");
    require_positive_entries(tail, "tail");
    require_positive_entries(period, "period");
    ContinuedFraction cf;
    cf.a0_ = std::move(a0);
    cf.periodicity_ = Periodicity{tail.size(), std::move(period)};
    cf.tail_ = std::move(tail);
    cf.canonicalize();
    return cf;
}

void ContinuedFraction::canonicalize() {
    if (!periodicity_) return;
    auto& period = periodicity_->period;

    // Primitive period: shortest w with period = w^k.
    const std::size_t len = period.size();
    for (std::size_t cand = 1; cand < len; ++cand) {
        if (len % cand != 0) continue;
        bool repeats = true;
        for (std::size_t i = cand; i < len && repeats; ++i) {
            repeats = period[i] == period[i % cand];
        }
        if (repeats) {
            period.resize(cand);
            break;
        }
    }

    // Absorb tail entries that merely restate the period's end.
    while (!tail_.empty() && tail_.back() == period.back()) {
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
        tail_.pop_back();
    }
    periodicity_->preperiod_len = tail_.size();
}

std::size_t ContinuedFraction::available() const noexcept {
    if (periodicity_) return std::numeric_limits<std::size_t>::max();
    return 1 + tail_.size();
}

Int ContinuedFraction::quotient(std::size_t i) const {
    if (i == 0) return a0_;
    std::size_t t = i - 1;
    if (t < tail_.size()) return tail_[t];
    if (!periodicity_) throw Error("index_out_of_range", "finite continued fraction exhausted");
    const auto& period = periodicity_->period;
    return period[(t - tail_.size()) % period.size()];
}

std::vector<Int> ContinuedFraction::prefix(std::size_t count) const {
    std::vector<Int> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(quotient(i));
    return out;
}

double ContinuedFraction::evaluate(std::size_t max_quotients) const {
    std::size_t k = std::min<std::size_t>(max_quotients, available());
    if (k == 0) return to_double(a0_);
    double val = to_double(quotient(k - 1));
    for (std::size_t i = k - 1; i-- > 0;) {
        val = to_double(quotient(i)) + 1.0 / val;
    }
    return val;
}

// ---------------------------------------------------------------------------
// Expansion

ContinuedFraction expand_real(double x, std::size_t n, double eps) {
    if (!std::isfinite(x)) throw Error("invalid_argument", "non-finite input");
    if (n < 1) throw Error("invalid_argument", "quotient count must be >= 1");
    if (eps <= 0) throw Error("invalid_argument", "eps must be positive");

    // Past ~15 quotients the float error dominates the expansion.
    constexpr std::size_t kDoubleQuotientCap = 15;
    n = std::min(n, kDoubleQuotientCap);

    double a0d = std::floor(x);
    Int a0(static_cast<long long>(a0d));
    double frac = x - a0d;

    std::vector<Int> tail;
    while (1 + tail.size() < n && frac >= eps) {
        double y = 1.0 / frac;
        double ad = std::floor(y);
        if (ad > 4.5e15) break;  // beyond exact-integer doubles: treat as rational
        tail.emplace_back(static_cast<long long>(ad));
        frac = y - ad;
    }
    return ContinuedFraction::finite(std::move(a0), std::move(tail));
}

namespace {

// floor((P + sqrt(D)) / Q) in exact arithmetic; sqrt(D) irrational.
Int surd_floor(const Int& P, const Int& D, const Int& Q) {
    Int f = isqrt(D);
    if (Q > 0) return floor_div(P + f, Q);
    // (P + sqrt(D))/Q = (-P - sqrt(D))/(-Q), and -P - sqrt(D) lies in the
    // open unit interval above -P - f - 1.
    return floor_div(-P - f - 1, -Q);
}

}  // namespace

ContinuedFraction expand_surd(const QuadraticIrrational& x) {
    if (!x.is_irrational()) throw Error("not_irrational", "cannot expand a rational");
    if (x.d() < 0) throw Error("invalid_argument", "cannot expand an imaginary quadratic");

    // Bring x to the form (P + sqrt(D))/Q with Q | (D - P^2).
    Int P = x.p(), Q = x.r();
    Int D = x.q() * x.q() * Int(x.d());
    if (x.q() < 0) {
        P = -P;
        Q = -Q;
    }
    if ((D - P * P) % Q != 0) {
        P *= boost::multiprecision::abs(Q);
        D *= Q * Q;
        Q *= boost::multiprecision::abs(Q);
    }

    constexpr std::size_t kPeriodSearchLimit = 1'000'000;
    std::vector<Int> quotients;
    std::map<std::pair<Int, Int>, std::size_t> seen;

    for (std::size_t step = 0;; ++step) {
        if (step > kPeriodSearchLimit)
            throw Error("period_search_limit", "period not found within the state limit");
        auto [it, inserted] = seen.emplace(std::make_pair(P, Q), step);
        if (!inserted) {
            const std::size_t start = it->second;  // preperiod length
            std::vector<Int> period(quotients.begin() + start, quotients.end());
            if (start == 0) {
                // Purely periodic: a0 is part of the cycle; store the period
                // as seen from position 1.
                std::rotate(period.begin(), period.begin() + 1, period.end());
                return ContinuedFraction::periodic(quotients[0], {}, std::move(period));
            }
            std::vector<Int> tail(quotients.begin() + 1, quotients.begin() + start);
            return ContinuedFraction::periodic(quotients[0], std::move(tail), std::move(period));
        }
        Int a = surd_floor(P, D, Q);
        quotients.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

QuadraticIrrational reconstruct_value(const ContinuedFraction& cf,
                                      std::optional<std::int64_t> field_hint) {
    if (!cf.is_periodic()) throw Error("invalid_argument", "reconstruction needs a periodic cf");

    // Fixed point of the period matrix: y = (a y + b)/(c y + d), i.e.
    // c y^2 + (d - a) y - b = 0 with discriminant tr^2 - 4 det > 0.
    UnimodularMatrix m = UnimodularMatrix::identity();
    for (const Int& a : cf.periodicity()->period) {
        m = m * UnimodularMatrix(a, 1, 1, 0);
    }
    Int disc = (m.a - m.d) * (m.a - m.d) + 4 * m.b * m.c;

    // Split disc = f^2 * delta with delta squarefree. The discriminant can be
    // enormous, so instead of factoring we scan small squarefree delta; the
    // caller can pin the field directly when it is known.
    auto split = [&](std::int64_t delta) -> std::optional<Int> {
        if (delta <= 0 || disc % delta != 0) return std::nullopt;
        Int cof = disc / delta;
        if (!is_perfect_square(cof)) return std::nullopt;
        return isqrt(cof);
    };
    std::int64_t delta = 0;
    Int f;
    if (field_hint) {
        auto fh = split(*field_hint);
        if (!fh) throw Error("field_mismatch", "discriminant does not lie over the hinted field");
        delta = *field_hint;
        f = *fh;
    } else {
        constexpr std::int64_t kFieldScanBound = 100'000;
        for (std::int64_t cand = 1; cand <= kFieldScanBound; ++cand) {
            if (auto fh = split(cand)) {
                auto [sf, sq] = squarefree_decompose(cand);
                delta = sf;
                f = *fh * sq;
                break;
            }
        }
        if (delta == 0)
            throw Error("field_extraction", "could not identify the quadratic field of the period");
    }
    // Root > 1 (tail values of a regular cf exceed 1): the + branch.
    QuadraticIrrational y(m.a - m.d, f, 2 * m.c, delta);

    // Apply the head [a0; tail...] as a Mobius map.
    UnimodularMatrix head(cf.a0(), 1, 1, 0);
    for (const Int& a : cf.tail()) head = head * UnimodularMatrix(a, 1, 1, 0);
    return mobius_apply(head, y);
}

// ---------------------------------------------------------------------------
// Convergents and matrices

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n) {
    std::vector<Convergent> out;
    out.reserve(n + 2);
    out.push_back({0, 1, -1});
    out.push_back({1, 0, 0});
    Int p_prev = 0, q_prev = 1;  // nu = -1
    Int p_cur = 1, q_cur = 0;    // nu = 0
    for (std::size_t nu = 1; nu <= n; ++nu) {
        Int mu = cf.quotient(nu - 1);
        Int p_next = mu * p_cur + p_prev;
        Int q_next = mu * q_cur + q_prev;
        out.push_back({p_next, q_next, static_cast<long long>(nu)});
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p_next);
        q_cur = std::move(q_next);
    }
    return out;
}

UnimodularMatrix convergent_frame(const ContinuedFraction& cf, std::size_t nu) {
    auto cs = convergents(cf, nu);
    const Convergent& cur = cs[nu + 1];
    const Convergent& prev = cs[nu];
    return {cur.p, prev.p, cur.q, prev.q};
}

std::vector<UnimodularMatrix> an_matrices(const ContinuedFraction& cf, std::size_t n) {
    if (cf.a0() < 1) throw Error("invalid_quotient", "a0 must be >= 1 for the matrix sequence");
    std::vector<UnimodularMatrix> out;
    out.reserve(n + 1);
    UnimodularMatrix acc(cf.a0(), 1, 1, 0);
    out.push_back(acc);
    for (std::size_t i = 1; i <= n; ++i) {
        acc = acc * UnimodularMatrix(cf.quotient(i), 1, 1, 0);
        out.push_back(acc);
    }
    return out;
}

KleinWitness klein_check(const ContinuedFraction& cf, std::size_t nu) {
    if (nu < 1) throw Error("invalid_argument", "klein_check needs nu >= 1");
    auto cs = convergents(cf, nu);
    const Convergent& c2 = cs[nu + 1];  // nu
    const Convergent& c1 = cs[nu];      // nu - 1
    const Convergent& c0 = cs[nu - 1];  // nu - 2
    Int mu = cf.quotient(nu - 1);
    std::pair<Int, Int> seg_i{c2.p - c0.p, c2.q - c0.q};
    std::pair<Int, Int> seg_j{c1.p, c1.q};
    bool holds = seg_i.first == mu * seg_j.first && seg_i.second == mu * seg_j.second;
    return {holds, std::move(seg_i), std::move(seg_j), std::move(mu)};
}

// ---------------------------------------------------------------------------
// Length recurrences

double length_recurrence_residual(std::span<const double> lengths,
                                  std::span<const Int> quotients,
                                  std::size_t nu) {
    if (nu < 3) throw Error("invalid_argument", "recurrence residual needs nu >= 3");
    if (nu > lengths.size() || nu > quotients.size())
        throw Error("index_out_of_range", "nu exceeds the supplied sequences");
    double mu = to_double(quotients[nu - 1]);
    return lengths[nu - 1] - (lengths[nu - 3] + mu * lengths[nu - 2]);
}

std::vector<QuotientEstimate> quotients_from_lengths(std::span<const double> lengths) {
    if (lengths.size() < 3) throw Error("invalid_argument", "need at least 3 lengths");
    for (std::size_t i = 1; i < lengths.size(); ++i) {
        if (!(lengths[i] > lengths[i - 1]))
            throw Error("not_monotone", "lengths must be strictly increasing");
    }
    std::vector<QuotientEstimate> out;
    out.reserve(lengths.size() - 2);
    for (std::size_t nu = 3; nu <= lengths.size(); ++nu) {
        double raw = (lengths[nu - 1] - lengths[nu - 3]) / lengths[nu - 2];
        long long rounded = std::llround(raw);
        bool flagged = std::abs(raw - static_cast<double>(rounded)) > 0.25;
        if (rounded < 1) {
            rounded = 1;
            flagged = true;
        }
        out.push_back({rounded, raw, flagged});
    }
    return out;
}

double window_ratio(std::span<const double> lengths, std::size_t nu, std::size_t N) {
    if (N == 0) return 1.0;
    if (nu < 1 || nu + N > lengths.size())
        throw Error("index_out_of_range", "window exceeds the supplied lengths");
    if (lengths[nu - 1] == 0.0) throw Error("invalid_argument", "zero-length entry");
    return lengths[nu + N - 1] / lengths[nu - 1];
}

// ---------------------------------------------------------------------------
// Tail equivalence

namespace {

std::optional<long long> exact_tail_shift(const ContinuedFraction& a,
                                          const ContinuedFraction& b) {
    const auto& wa = a.periodicity()->period;
    const auto& wb = b.periodicity()->period;
    if (wa.size() != wb.size()) return std::nullopt;
    const std::size_t L = wa.size();

    // Primitive periods match in at most one rotation: w_b[j] = w_a[(j+r) mod L].
    std::optional<std::size_t> rot;
    for (std::size_t r = 0; r < L && !rot; ++r) {
        bool all = true;
        for (std::size_t j = 0; j < L && all; ++j) all = wb[j] == wa[(j + r) % L];
        if (all) rot = r;
    }
    if (!rot) return std::nullopt;

    const long long h1 = static_cast<long long>(a.head_size());
    const long long h2 = static_cast<long long>(b.head_size());
    const long long Ll = static_cast<long long>(L);
    long long k0 = ((h1 - h2 + static_cast<long long>(*rot)) % Ll + Ll) % Ll;
    long long alt = k0 - Ll;
    return std::llabs(alt) < k0 ? alt : k0;
}

std::optional<long long> prefix_tail_shift(const ContinuedFraction& a,
                                           const ContinuedFraction& b,
                                           const TailCompareOptions& opts) {
    std::size_t da = std::min(a.available(), opts.depth);
    std::size_t db = std::min(b.available(), opts.depth);
    if (da < 2 || db < 2) return std::nullopt;
    // The final quotient of a truncated expansion is unreliable.
    --da;
    --db;
    auto pa = a.prefix(da);
    auto pb = b.prefix(db);

    auto try_shift = [&](long long k) -> bool {
        std::size_t matched = 0;
        long long m_lo = std::max<long long>(1, 1 - k);
        for (long long m = m_lo; m < static_cast<long long>(db); ++m) {
            long long am = m + k;
            if (am < 0 || am >= static_cast<long long>(da)) continue;
            if (pa[static_cast<std::size_t>(am)] != pb[static_cast<std::size_t>(m)]) return false;
            ++matched;
        }
        return matched >= opts.min_overlap;
    };

    for (long long mag = 0; mag <= opts.max_shift; ++mag) {
        if (try_shift(mag)) return mag;
        if (mag > 0 && try_shift(-mag)) return -mag;
    }
    return std::nullopt;
}

}  // namespace

std::optional<TailShift> tail_equivalent(const ContinuedFraction& cf1,
                                         const ContinuedFraction& cf2,
                                         const TailCompareOptions& opts) {
    if (cf1.is_periodic() && cf2.is_periodic()) {
        if (auto k = exact_tail_shift(cf1, cf2)) return TailShift{*k, true};
        return std::nullopt;
    }
    if (auto k = prefix_tail_shift(cf1, cf2, opts)) return TailShift{*k, false};
    return std::nullopt;
}

QuadraticIrrational mobius_apply(const UnimodularMatrix& m, const QuadraticIrrational& x) {
    QuadraticIrrational num =
        QuadraticIrrational::rational(m.a, 1) * x + QuadraticIrrational::rational(m.b, 1);
    QuadraticIrrational den =
        QuadraticIrrational::rational(m.c, 1) * x + QuadraticIrrational::rational(m.d, 1);
    if (den.p() == 0 && den.q() == 0) throw Error("degenerate_mobius", "c x + d vanishes");
    return num / den;
}

}  // namespace tori::contfrac
