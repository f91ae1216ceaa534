#include "starklab/forms.hpp"

#include <cmath>
#include <numeric>

#include "starklab/dirichlet.hpp"
#include "starklab/errors.hpp"

namespace starklab {

namespace {

long isqrt(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Comparisons against sqrt(D) for non-square D > 0.
bool below_root(long x, long D) { return x < 0 || x * x < D; }
bool above_root(long x, long D) { return x > 0 && x * x > D; }

long floor_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

Form rho(const Form& f) {
    const long D = f.disc();
    const long ac = std::labs(f.c);
    const long m = 2 * ac;
    long b;
    if (above_root(ac, D)) {
        b = floor_mod(-f.b, m);
        if (b > ac) b -= m;
    } else {
        const long r0 = isqrt(D);
        b = r0 - floor_mod(r0 + f.b, m);
    }
    return {f.c, b, (b * b - D) / (4 * f.c)};
}

// (g, x, y) with x a + y b = g.
std::tuple<long, long, long> xgcd(long a, long b) {
    long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

// A form of the reduced cycle of f with a > 0.
Form positive_in_cycle(Form f) {
    f = reduce_form(f);
    if (f.disc() < 0 || f.a > 0) return f;
    return rho(f);
}

}  // namespace

bool is_reduced(const Form& f) {
    const long D = f.disc();
    if (D < 0) {
        if (!(std::labs(f.b) <= f.a && f.a <= f.c)) return false;
        if ((std::labs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    const long a2 = 2 * std::labs(f.a);
    return f.b > 0 && below_root(f.b, D) && above_root(a2 + f.b, D) && below_root(a2 - f.b, D);
}

Form reduce_form(Form f) {
    const long D = f.disc();
    if (D < 0) {
        if (f.a < 0) throw InputError("negative definite form");
        for (;;) {
            const long k = static_cast<long>(std::floor(static_cast<double>(f.a - f.b) / (2.0 * f.a)));
            f.b += 2 * k * f.a;
            while (f.b <= -f.a) f.b += 2 * f.a;
            while (f.b > f.a) f.b -= 2 * f.a;
            f.c = (f.b * f.b - D) / (4 * f.a);
            if (f.a > f.c) {
                f = {f.c, -f.b, f.a};
                continue;
            }
            if (f.a == f.c && f.b < 0) f.b = -f.b;
            return f;
        }
    }
    for (int i = 0; i < 100000; ++i) {
        if (is_reduced(f)) return f;
        f = rho(f);
    }
    throw CapacityError("indefinite reduction did not terminate");
}

Form compose(Form f1, Form f2) {
    const long D = f1.disc();
    if (f2.disc() != D) throw InputError("composition of forms of different discriminants");
    f1 = positive_in_cycle(f1);
    f2 = positive_in_cycle(f2);
    if (f1.a > f2.a) std::swap(f1, f2);
    const long s = (f1.b + f2.b) / 2;
    const long n = f2.b - s;
    long y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        auto [g, u, v] = xgcd(f2.a, f1.a);
        (void)v;
        d = g;
        y1 = u;
    }
    long x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [g, x, y] = xgcd(s, d);
        d1 = g;
        x2 = x;
        y2 = -y;
    }
    const long v1 = f1.a / d1, v2 = f2.a / d1;
    const long r = floor_mod(y1 * y2 * n - x2 * f2.c, v1);
    const long b3 = f2.b + 2 * v2 * r;
    const long a3 = v1 * v2;
    if ((b3 * b3 - D) % (4 * a3) != 0) throw ConsistencyError("composition produced a non-integral form");
    return reduce_form({a3, b3, (b3 * b3 - D) / (4 * a3)});
}

Form principal_form(long D) {
    const long s = floor_mod(D, 2);
    return reduce_form({1, s, (s * s - D) / 4});
}

std::vector<Form> reduced_forms(long D) {
    std::vector<Form> out;
    auto primitive = [](long a, long b, long c) { return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) == 1; };
    if (D < 0) {
        for (long a = 1; 3 * a * a <= -D; ++a)
            for (long b = -a + 1; b <= a; ++b) {
                if (floor_mod(b - D, 2) != 0 || (b * b - D) % (4 * a) != 0) continue;
                const long c = (b * b - D) / (4 * a);
                Form f{a, b, c};
                if (is_reduced(f) && primitive(a, b, c)) out.push_back(f);
            }
        return out;
    }
    for (long b = 1; below_root(b, D); ++b) {
        if (floor_mod(b - D, 2) != 0) continue;
        const long N = (D - b * b) / 4;
        for (long a = 1; a <= N; ++a) {
            if (N % a) continue;
            for (long sa : {a, -a}) {
                Form f{sa, b, -N / sa};
                if (is_reduced(f) && primitive(f.a, f.b, f.c)) out.push_back(f);
            }
        }
    }
    return out;
}

Form form_of_prime(const PrimeIdeal& P, long D) {
    if (P.type == Splitting::Inert) return principal_form(D);
    const long p = P.p;
    long b = floor_mod(2 * P.root - D, 2 * p);
    if (b > p) b -= 2 * p;
    return {p, b, (b * b - D) / (4 * p)};
}

ClassGroup::ClassGroup(long D) : D_(D) {
    if (D == 1 || !is_fundamental_discriminant(D)) throw InputError("class group needs a fundamental discriminant");
    if (std::labs(D) > 1000000) throw CapacityError("discriminant too large for form enumeration");
    auto forms = reduced_forms(D);
    for (const auto& f : forms) {
        if (index_.count(f)) continue;
        const int id = static_cast<int>(reps_.size());
        std::vector<Form> cycle{f};
        if (D > 0)
            for (Form g = rho(f); !(g == f); g = rho(g)) cycle.push_back(g);
        Form rep{0, 0, 0};
        for (const auto& g : cycle) {
            index_[g] = id;
            if (g.a > 0 && (rep.a == 0 || g < rep)) rep = g;
        }
        reps_.push_back(rep);
    }
    const int n = static_cast<int>(reps_.size());
    if (n > kMaxGroupOrder) throw CapacityError("class group exceeds the group-order cap");
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i * n + j] = narrow_index(compose(reps_[i], reps_[j]));
    std::vector<int> kernel;
    if (D > 0) {
        const long s = floor_mod(D, 2);
        kernel.push_back(narrow_index({-1, s, (D - s * s) / 4}));
    }
    structure_ = structure_of(n, narrow_index(principal_form(D)), [&](int i, int j) { return table[i * n + j]; }, kernel);
}

int ClassGroup::narrow_index(const Form& f) const {
    if (f.disc() != D_) throw InputError("form of the wrong discriminant");
    auto it = index_.find(reduce_form(f));
    if (it == index_.end()) throw ConsistencyError("reduced form missing from the class list");
    return it->second;
}

int ClassGroup::element_of(const Form& f) const { return structure_.log[narrow_index(f)]; }

int ClassGroup::element_of(const PrimeIdeal& P) const { return element_of(form_of_prime(P, D_)); }

}  // namespace starklab
