#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace sgc {

using Rat = mpq_class;

// Exact Gaussian rational: re + im*I with both parts in Q.
struct Coef {
    Rat re, im;

    Coef() : re(0), im(0) {}
    Coef(long n) : re(n), im(0) {}
    explicit Coef(Rat r) : re(std::move(r)), im(0) {}
    Coef(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Coef zero() { return Coef(); }
    static Coef one() { return Coef(1); }
    static Coef i() { return Coef(Rat(0), Rat(1)); }
    static Coef frac(long p, long q) {
        Rat r(p, q);
        r.canonicalize();
        return Coef(std::move(r));
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    Coef operator-() const { return Coef(Rat(-re), Rat(-im)); }
    Coef operator+(const Coef& o) const { return Coef(Rat(re + o.re), Rat(im + o.im)); }
    Coef operator-(const Coef& o) const { return Coef(Rat(re - o.re), Rat(im - o.im)); }
    Coef operator*(const Coef& o) const {
        return Coef(Rat(re * o.re - im * o.im), Rat(re * o.im + im * o.re));
    }
    Coef inv() const {
        Rat n(re * re + im * im);
        return Coef(Rat(re / n), Rat(-im / n));
    }
    Coef operator/(const Coef& o) const { return *this * o.inv(); }

    Coef& operator+=(const Coef& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Coef& operator*=(const Coef& o) {
        *this = *this * o;
        return *this;
    }

    bool operator==(const Coef& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Coef& o) const { return !(*this == o); }

    int cmp(const Coef& o) const {
        int c = ::cmp(re, o.re);
        if (c != 0) return c < 0 ? -1 : 1;
        c = ::cmp(im, o.im);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }

    // "1/2", "-3", "I", "-2*I", "1+1/2*I"
    std::string str() const {
        auto rat = [](const Rat& r) { return r.get_str(); };
        if (im == 0) return rat(re);
        std::string imag;
        if (im == 1)
            imag = "I";
        else if (im == -1)
            imag = "-I";
        else
            imag = rat(im) + "*I";
        if (re == 0) return imag;
        if (im > 0) return rat(re) + "+" + imag;
        return rat(re) + imag;  // imag already carries the minus
    }
};

}  // namespace sgc
