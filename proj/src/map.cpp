#include "fatou/map.hpp"

#include <cmath>

namespace fatou {

void MapParams::validate() const {
    if (n < 2 || d < 2) throw InvalidParams("n and d must both be >= 2");
    if (1.0 / n + 1.0 / d >= 1.0)
        throw InvalidParams("1/n + 1/d < 1 required (n = d = 2 is excluded)");
    if (a == Complex{}) throw InvalidParams("a must be nonzero");
    if (q.empty() || poly_degree(q) > n)
        throw InvalidParams("Q must be a nonzero polynomial of degree <= n");
    if (q0() == Complex{})
        throw InvalidParams("Q(0) must be nonzero (origin must stay a superattracting fixed point)");
    if (std::abs(bn()) >= 1.0)
        throw InvalidParams("|b_n| < 1 required (infinity must stay attracting)");
}

Complex poly_eval(const Poly& p, Complex z) {
    Complex acc{};
    for (size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{Complex{}};
    Poly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * double(i);
    return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Complex{});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a.size() >= b.size() ? a : b;
    const Poly& s = a.size() >= b.size() ? b : a;
    for (size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    return r;
}

Poly poly_scale(const Poly& p, Complex s) {
    Poly r = p;
    for (auto& c : r) c *= s;
    return r;
}

Poly poly_shift(const Poly& p, int k) {
    Poly r(p.size() + k, Complex{});
    for (size_t i = 0; i < p.size(); ++i) r[i + k] = p[i];
    return r;
}

int poly_degree(const Poly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (p[i] != Complex{}) return static_cast<int>(i);
    return 0;
}

namespace {

Complex ipow(Complex z, int k) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

SpherePoint divide_last(Complex num, Complex den) {
    if (den == Complex{}) {
        if (num == Complex{})
            throw IndeterminateValue("0/0: z is a joint root of numerator and denominator");
        return SpherePoint::infinity();
    }
    Complex w = num / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        return SpherePoint::infinity();
    return SpherePoint::finite(w);
}

}  // namespace

SpherePoint eval_unperturbed(const MapParams& p, const SpherePoint& z) {
    if (z.at_infinity) return SpherePoint::infinity();
    Complex num = ipow(z.value, p.n) * (z.value - p.a);
    Complex den = poly_eval(p.q, z.value);
    return divide_last(num, den);
}

SpherePoint eval_perturbed(const MapParams& p, const SpherePoint& z) {
    if (!p.perturbed()) return eval_unperturbed(p, z);
    if (z.at_infinity) return SpherePoint::infinity();
    // numerator z^{n+d}(z-a) + lambda Q(z), denominator z^d Q(z)
    Complex zd = ipow(z.value, p.d);
    Complex znd = zd * ipow(z.value, p.n);
    Complex qv = poly_eval(p.q, z.value);
    Complex num = znd * (z.value - p.a) + p.lambda * qv;
    Complex den = zd * qv;
    return divide_last(num, den);
}

SpherePoint eval_derivative(const MapParams& p, Complex z) {
    Complex qv = poly_eval(p.q, z);
    Complex qd = poly_eval(poly_derivative(p.q), z);
    Complex zn1 = ipow(z, p.n - 1);
    Complex zn = zn1 * z;
    // ((n+1) z^n - n a z^{n-1}) Q - z^n (z - a) Q', over Q^2
    Complex num0 = (double(p.n + 1) * zn - double(p.n) * p.a * zn1) * qv -
                   zn * (z - p.a) * qd;
    if (!p.perturbed()) return divide_last(num0, qv * qv);
    Complex zd1 = ipow(z, p.d + 1);
    Complex num = zd1 * num0 - double(p.d) * p.lambda * qv * qv;
    Complex den = zd1 * qv * qv;
    return divide_last(num, den);
}

Poly critical_numerator_poly(const MapParams& p) {
    p.validate();
    const Poly& q = p.q;
    Poly qd = poly_derivative(q);
    Poly bracket = poly_scale(poly_shift(q, p.n), double(p.n + 1));
    bracket = poly_add(bracket, poly_scale(poly_shift(qd, p.n + 1), -1.0));
    bracket = poly_add(bracket, poly_scale(poly_shift(q, p.n - 1), -p.a * double(p.n)));
    bracket = poly_add(bracket, poly_scale(poly_shift(qd, p.n), p.a));
    Poly out = poly_shift(bracket, p.d + 1);
    out = poly_add(out, poly_scale(poly_mul(q, q), -p.lambda * double(p.d)));
    return out;
}

Poly zeros_poly(const MapParams& p) {
    p.validate();
    if (!p.perturbed()) throw InvalidParams("zeros_poly requires lambda != 0");
    Poly out = poly_shift(Poly{-p.a, Complex{1.0, 0.0}}, p.n + p.d);
    return poly_add(out, poly_scale(p.q, p.lambda));
}

Poly unperturbed_critical_poly(const MapParams& p) {
    p.validate();
    const Poly& q = p.q;
    Poly qd = poly_derivative(q);
    Poly out = poly_scale(poly_shift(q, 1), double(p.n + 1));
    out = poly_add(out, poly_scale(poly_shift(qd, 2), -1.0));
    out = poly_add(out, poly_scale(q, -p.a * double(p.n)));
    out = poly_add(out, poly_scale(poly_shift(qd, 1), p.a));
    return out;
}

}  // namespace fatou
