#include "qmf/multipoly.hpp"

#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

namespace {
const Gaussian kZero{};
constexpr int kBits = 4;
constexpr int kMaxExp = (1 << kBits) - 1;
} // namespace

MultiPoly::MultiPoly(std::vector<int> orders) : orders_(std::move(orders))
{
    if (orders_.size() > 16) {
        throw math_error("MultiPoly supports at most 16 variables");
    }
    for (int o : orders_) {
        if (o < 0 || o > kMaxExp) {
            throw math_error("MultiPoly per-variable order out of range [0,15]");
        }
    }
}

MultiPoly MultiPoly::constant(const Gaussian& c, std::vector<int> orders)
{
    MultiPoly p(std::move(orders));
    if (!c.is_zero()) {
        p.terms_.emplace(0, c);
    }
    return p;
}

std::uint64_t MultiPoly::pack(const std::vector<int>& exps)
{
    std::uint64_t key = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        key |= static_cast<std::uint64_t>(exps[v] & kMaxExp) << (kBits * v);
    }
    return key;
}

std::vector<int> MultiPoly::unpack(std::uint64_t key, std::size_t nvars)
{
    std::vector<int> exps(nvars);
    for (std::size_t v = 0; v < nvars; ++v) {
        exps[v] = static_cast<int>((key >> (kBits * v)) & kMaxExp);
    }
    return exps;
}

bool MultiPoly::in_box(std::uint64_t key) const
{
    for (std::size_t v = 0; v < orders_.size(); ++v) {
        const int e = static_cast<int>((key >> (kBits * v)) & kMaxExp);
        if (e > orders_[v]) {
            return false;
        }
    }
    return true;
}

const Gaussian& MultiPoly::coeff(const std::vector<int>& exps) const
{
    auto it = terms_.find(pack(exps));
    return it == terms_.end() ? kZero : it->second;
}

void MultiPoly::add_term(const std::vector<int>& exps, const Gaussian& c)
{
    add_term_packed(pack(exps), c);
}

void MultiPoly::add_term_packed(std::uint64_t key, const Gaussian& c)
{
    if (c.is_zero() || !in_box(key)) {
        return;
    }
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly p(orders_);
    for (const auto& [k, c] : terms_) {
        p.terms_.emplace(k, -c);
    }
    return p;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b)
{
    if (a.orders_ != b.orders_) {
        throw math_error("MultiPoly addition across different boxes");
    }
    MultiPoly p = a;
    for (const auto& [k, c] : b.terms_) {
        p.add_term_packed(k, c);
    }
    return p;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b)
{
    return a + (-b);
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    if (a.orders_ != b.orders_) {
        throw math_error("MultiPoly multiplication across different boxes");
    }
    MultiPoly p(a.orders_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            // exponent fields cannot carry between variables: each field sum
            // either stays within 4 bits or the monomial leaves the box anyway
            bool overflow = false;
            std::uint64_t key = 0;
            for (std::size_t v = 0; v < a.orders_.size(); ++v) {
                const int ea = static_cast<int>((ka >> (kBits * v)) & kMaxExp);
                const int eb = static_cast<int>((kb >> (kBits * v)) & kMaxExp);
                if (ea + eb > a.orders_[v]) {
                    overflow = true;
                    break;
                }
                key |= static_cast<std::uint64_t>(ea + eb) << (kBits * v);
            }
            if (!overflow) {
                p.add_term_packed(key, ca * cb);
            }
        }
    }
    return p;
}

MultiPoly MultiPoly::operator*(const Gaussian& c) const
{
    MultiPoly p(orders_);
    if (c.is_zero()) {
        return p;
    }
    for (const auto& [k, v] : terms_) {
        p.terms_.emplace(k, v * c);
    }
    return p;
}

void MultiPoly::mul_exp_monomial(std::uint64_t key, const Gaussian& c)
{
    if (c.is_zero()) {
        return;
    }
    // exp(c*x^key) = sum_k c^k x^(k*key) / k!, truncated to the box.
    // Find how many powers of the monomial fit.
    int max_k = kMaxExp;
    for (std::size_t v = 0; v < orders_.size(); ++v) {
        const int e = static_cast<int>((key >> (kBits * v)) & kMaxExp);
        if (e > 0) {
            max_k = std::min(max_k, orders_[v] / e);
        }
    }
    MultiPoly factor(orders_);
    Gaussian ck(1);
    Rational kfact(1);
    factor.terms_.emplace(0, Gaussian(1));
    std::uint64_t kk = 0;
    for (int k = 1; k <= max_k; ++k) {
        ck *= c;
        kfact *= k;
        kk += key;
        factor.add_term_packed(kk, ck * Gaussian(Rational(1) / kfact));
    }
    *this = *this * factor;
}

MultiPoly MultiPoly::derivative(std::size_t v) const
{
    MultiPoly p(orders_);
    for (const auto& [k, c] : terms_) {
        const int e = static_cast<int>((k >> (kBits * v)) & kMaxExp);
        if (e == 0) {
            continue;
        }
        const std::uint64_t key = k - (static_cast<std::uint64_t>(1) << (kBits * v));
        p.add_term_packed(key, c * Gaussian(e));
    }
    return p;
}

MultiPoly MultiPoly::truncated(const std::vector<int>& orders) const
{
    MultiPoly p(orders);
    if (orders.size() != orders_.size()) {
        throw math_error("MultiPoly truncation must keep the variable count");
    }
    for (const auto& [k, c] : terms_) {
        p.add_term_packed(k, c);
    }
    return p;
}

std::optional<std::vector<int>> MultiPoly::first_mismatch(const MultiPoly& a, const MultiPoly& b)
{
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
            return unpack(ia->first, a.nvars());
        }
        if (ia == a.terms_.end() || ib->first < ia->first) {
            return unpack(ib->first, b.nvars());
        }
        if (ia->second != ib->second) {
            return unpack(ia->first, a.nvars());
        }
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.str() << ")";
        const auto exps = unpack(k, orders_.size());
        for (std::size_t v = 0; v < exps.size(); ++v) {
            if (exps[v] > 0) {
                os << "*" << (v < names.size() ? names[v] : "x" + std::to_string(v));
                if (exps[v] > 1) {
                    os << "^" << exps[v];
                }
            }
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

} // namespace qmf
