#include "curvestats/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace curvestats {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// dense polynomial arithmetic over F_p on int vectors (ascending coeffs)
using Poly = std::vector<int>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // m is monic
    size_t dm = m.size() - 1;
    for (size_t d = r.size(); d-- > dm;) {
        int c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (size_t i = 0; i < dm; ++i) r[d - dm + i] = ((r[d - dm + i] - c * m[i]) % p + p) % p;
    }
    return trim(std::move(r));
}

Poly pow_mod(Poly base, long long e, const Poly& m, int p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = mul_mod(r, base, m, p);
        base = mul_mod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    auto mod_of = [p](Poly x, Poly y) {
        x = trim(std::move(x));
        y = trim(std::move(y));
        if (y.empty()) throw std::logic_error("poly mod by zero");
        // make y monic
        int lead = y.back();
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (lead * t % p == 1) inv = t;
        for (auto& c : y) c = c * inv % p;
        while (x.size() >= y.size() && !x.empty()) {
            int c = x.back();
            size_t shift = x.size() - y.size();
            for (size_t i = 0; i < y.size(); ++i) x[shift + i] = ((x[shift + i] - c * y[i]) % p + p) % p;
            x = trim(std::move(x));
        }
        return x;
    };
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = mod_of(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const Poly& m, int p) {
    int k = static_cast<int>(m.size()) - 1;
    Poly x{0, 1};
    // x^{p^k} == x mod m
    Poly xp = x;
    for (int i = 0; i < k; ++i) xp = pow_mod(xp, p, m, p);
    Poly diff = xp;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!trim(diff).empty()) return false;
    for (long r : prime_factors(k)) {
        Poly xr = x;
        for (int i = 0; i < k / r; ++i) xr = pow_mod(xr, p, m, p);
        Poly d = xr;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        Poly g = poly_gcd(m, trim(d), p);
        if (g.size() != 1) return false;
    }
    return true;
}

bool is_primitive(const Poly& m, int p, long q) {
    Poly x{0, 1};
    for (long r : prime_factors(q - 1)) {
        Poly t = pow_mod(x, (q - 1) / r, m, p);
        if (t.size() == 1 && t[0] == 1) return false;
    }
    return true;
}

}  // namespace

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("FiniteField: characteristic must be prime");
    if (k < 1 || k > 20) throw std::invalid_argument("FiniteField: degree out of range");
    double qd = std::pow(static_cast<double>(p), k);
    if (qd > (1 << 20)) throw std::invalid_argument("FiniteField: field too large for table arithmetic");
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;

    // canonical modulus
    if (k == 1) {
        // x - g with g the least primitive root mod p
        int g = 1;
        for (int cand = 1; cand < p; ++cand) {
            bool prim = true;
            for (long r : prime_factors(p - 1)) {
                long t = 1, b = cand, e = (p - 1) / r;
                while (e) {
                    if (e & 1) t = t * b % p;
                    b = b * b % p;
                    e >>= 1;
                }
                if (t == 1) {
                    prim = false;
                    break;
                }
            }
            if (prim) {
                g = cand;
                break;
            }
        }
        modulus_ = {((-g) % p + p) % p, 1};
    } else {
        std::vector<const FiniteField*> subfields;
        for (long r : prime_factors(k)) subfields.push_back(&FiniteField::get(p, k / static_cast<int>(r)));
        long lower_count = 1;
        for (int i = 0; i < k; ++i) lower_count *= p;
        Poly m(static_cast<size_t>(k) + 1, 0);
        m[static_cast<size_t>(k)] = 1;
        bool found = false;
        for (long idx = 0; idx < lower_count && !found; ++idx) {
            long t = idx;
            for (int i = 0; i < k; ++i) {
                m[static_cast<size_t>(i)] = static_cast<int>(t % p);
                t /= p;
            }
            if (!is_irreducible(m, p)) continue;
            if (!is_primitive(m, p, q_)) continue;
            bool compatible = true;
            for (const FiniteField* sub : subfields) {
                long s = (q_ - 1) / (sub->q_ - 1);
                Poly xs = pow_mod(Poly{0, 1}, s, m, p);
                // evaluate the subfield modulus at x^s inside F_p[x]/m
                Poly acc{};
                for (int d = static_cast<int>(sub->modulus_.size()) - 1; d >= 0; --d) {
                    acc = mul_mod(acc, xs, m, p);
                    int c = sub->modulus_[static_cast<size_t>(d)];
                    if (c) {
                        if (acc.empty()) acc = {0};
                        acc[0] = (acc[0] + c) % p;
                        acc = trim(std::move(acc));
                    }
                }
                if (!acc.empty()) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) found = true;
        }
        if (!found) throw std::logic_error("FiniteField: no compatible primitive modulus found");
        modulus_.assign(m.begin(), m.end());
    }

    // exp/log tables by repeated multiplication by x (or by g when k == 1)
    exp_.resize(static_cast<size_t>(q_ - 1));
    log_.assign(static_cast<size_t>(q_), 0);
    auto poly_to_index = [&](const Poly& a) {
        long v = 0;
        for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
        return static_cast<Elem>(v);
    };
    Poly mp(modulus_.begin(), modulus_.end());
    Poly gen = k == 1 ? Poly{(p - modulus_[0]) % p} : Poly{0, 1};
    Poly cur{1};
    for (long i = 0; i < q_ - 1; ++i) {
        Elem e = poly_to_index(cur);
        exp_[static_cast<size_t>(i)] = e;
        log_[e] = static_cast<uint32_t>(i);
        cur = mul_mod(cur, gen, mp, p);
    }
    if (poly_to_index(cur) != 1) throw std::logic_error("FiniteField: generator order wrong");

    neg_table_.resize(static_cast<size_t>(q_));
    for (long a = 0; a < q_; ++a) {
        long v = 0, scale = 1, t = a;
        for (int i = 0; i < k; ++i) {
            v += ((p - t % p) % p) * scale;
            scale *= p;
            t /= p;
        }
        neg_table_[static_cast<size_t>(a)] = static_cast<Elem>(v);
    }
    if (q_ <= 2048 && p != 2) {
        add_table_.resize(static_cast<size_t>(q_) * q_);
        for (long a = 0; a < q_; ++a)
            for (long b = 0; b < q_; ++b)
                add_table_[static_cast<size_t>(a) * q_ + b] = add_slow(static_cast<Elem>(a), static_cast<Elem>(b));
    }
    frob_table_.resize(static_cast<size_t>(q_));
    frob_table_[0] = 0;
    for (long a = 1; a < q_; ++a)
        frob_table_[static_cast<size_t>(a)] =
            exp_[static_cast<size_t>((static_cast<long long>(log_[a]) * p) % (q_ - 1))];
    trace_table_.resize(static_cast<size_t>(q_));
    for (long a = 0; a < q_; ++a) {
        Elem acc = 0, it = static_cast<Elem>(a);
        for (int i = 0; i < k; ++i) {
            acc = add(acc, it);
            it = frob_table_[it];
        }
        if (acc >= static_cast<Elem>(p)) throw std::logic_error("FiniteField: trace left the prime field");
        trace_table_[static_cast<size_t>(a)] = static_cast<uint8_t>(acc);
    }
}

FiniteField::Elem FiniteField::add_slow(Elem a, Elem b) const {
    long v = 0, scale = 1, ta = a, tb = b;
    for (int i = 0; i < k_; ++i) {
        v += ((ta + tb) % p_) * scale;
        ta /= p_;
        tb /= p_;
        scale *= p_;
    }
    return static_cast<Elem>(v);
}

FiniteField::Elem FiniteField::from_int(long c) const {
    long r = c % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("FiniteField::inv: zero has no inverse");
    long e = (q_ - 1 - log_[a]) % (q_ - 1);
    return exp_[static_cast<size_t>(e)];
}

FiniteField::Elem FiniteField::pow(Elem a, long long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("FiniteField::pow: zero to negative power");
        return e == 0 ? 1 : 0;
    }
    long long ord = q_ - 1;
    long long le = (static_cast<long long>(log_[a]) * (e % ord)) % ord;
    if (le < 0) le += ord;
    return exp_[static_cast<size_t>(le)];
}

int FiniteField::quadratic_character(Elem a) const {
    if (p_ == 2) throw std::domain_error("quadratic_character: defined for odd q");
    if (a == 0) return 0;
    return log_[a] % 2 == 0 ? 1 : -1;
}

std::string FiniteField::modulus_string() const {
    std::string out;
    for (int d = static_cast<int>(modulus_.size()) - 1; d >= 0; --d) {
        int c = modulus_[static_cast<size_t>(d)];
        if (!c) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += d == 1 ? "x" : "x^" + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

std::vector<FiniteField::Elem> FiniteField::embedding_into(const FiniteField& big) const {
    if (big.p_ != p_ || big.k_ % k_ != 0)
        throw std::invalid_argument("embedding_into: not a subfield");
    std::vector<Elem> map(static_cast<size_t>(q_), 0);
    long long s = (big.q_ - 1) / (q_ - 1);
    for (long e = 0; e < q_ - 1; ++e) {
        long long be = (static_cast<long long>(e) * s) % (big.q_ - 1);
        map[exp_[static_cast<size_t>(e)]] = big.exp_[static_cast<size_t>(be)];
    }
    return map;
}

const FiniteField& FiniteField::get(int p, int k) {
    // recursive: constructing F_{p^k} pulls in its subfields
    static std::recursive_mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto field = std::unique_ptr<FiniteField>(new FiniteField(p, k));
        it = cache.emplace(key, std::move(field)).first;
    }
    return *it->second;
}

FiniteField::Elem eval_poly(const FiniteField& F, const std::vector<FiniteField::Elem>& coeffs,
                            FiniteField::Elem x) {
    FiniteField::Elem acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
    return acc;
}

int poly_degree(const std::vector<FiniteField::Elem>& coeffs) {
    for (size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i]) return static_cast<int>(i);
    return -1;
}

}  // namespace curvestats
