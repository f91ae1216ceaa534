#include "starklab/dirichlet.hpp"

#include <numeric>


namespace starklab {

long gcd_long(long a, long b) { return std::gcd(a, b); }

int kronecker(long D, long n) {
    if (n <= 0) throw InputError("Kronecker symbol needs n >= 1");
    int result = 1;
    // Factor out 2 using (D/2) = 0 for even D, +1 for D = +-1 mod 8, -1 for D = +-3 mod 8.
    while (n % 2 == 0) {
        n /= 2;
        if (D % 2 == 0) return 0;
        long r = ((D % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    // Jacobi symbol (D mod n / n) for odd n.
    long a = ((D % n) + n) % n;
    long m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

bool is_fundamental_discriminant(long D) {
    if (D == 0 || D == 1) return false;
    auto squarefree = [](long n) {
        n = n < 0 ? -n : n;
        for (long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    long r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        long m = D / 4;
        long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

AbelianRealization AbelianRealization::from_kernel(long f, const std::vector<long>& kernel_generators) {
    if (f < 1) throw InputError("modulus must be positive");
    if (f > 200000) throw CapacityError("modulus exceeds desk bound");
    std::vector<long> units;
    std::vector<int> id_of(f, -1);
    for (long a = 0; a < f; ++a)
        if (std::gcd(a, f) == 1) {
            id_of[a] = static_cast<int>(units.size());
            units.push_back(a);
        }
    if (f == 1) {
        units = {0};
        id_of[0] = 0;
    }
    std::vector<int> kernel;
    for (long k : kernel_generators) {
        long r = ((k % f) + f) % f;
        if (id_of[r] < 0) throw InputError("kernel generator is not a unit modulo f");
        kernel.push_back(id_of[r]);
    }
    auto mul = [&](int x, int y) { return id_of[(units[x] * units[y]) % f]; };
    auto st = structure_of(static_cast<int>(units.size()), id_of[1 % f], mul, kernel);
    AbelianRealization r;
    r.group = st.group;
    r.modulus = f;
    r.artin.assign(f, -1);
    for (size_t i = 0; i < units.size(); ++i) r.artin[units[i]] = st.log[i];
    return r;
}

AbelianRealization AbelianRealization::multiquadratic(const std::vector<long>& discs) {
    long f = 1;
    for (long D : discs) {
        if (!is_fundamental_discriminant(D)) throw InputError("discriminant is not fundamental");
        f = std::lcm(f, D < 0 ? -D : D);
    }
    if (f > 200000) throw CapacityError("modulus exceeds desk bound");
    AbelianRealization r;
    r.group = make_group(std::vector<int>(discs.size(), 2));
    r.modulus = f;
    r.artin.assign(f, -1);
    std::vector<bool> hit(r.group->order(), false);
    for (long a = 1; a <= f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        std::vector<int> bits;
        for (long D : discs) bits.push_back(kronecker(D, a) == -1 ? 1 : 0);
        int idx = r.group->index(bits);
        r.artin[a % f] = idx;
        hit[idx] = true;
    }
    for (bool h : hit)
        if (!h) throw InputError("discriminants are not independent modulo squares");
    return r;
}

int AbelianRealization::frobenius(long n) const {
    long r = ((n % modulus) + modulus) % modulus;
    if (artin[r] < 0) throw InputError("Frobenius requested at a prime dividing the modulus");
    return artin[r];
}

long AbelianRealization::conductor(int chi) const {
    for (long d = 1; d <= modulus; ++d) {
        if (modulus % d != 0) continue;
        bool trivial = true;
        for (long a = 1; a < modulus && trivial; a += d)
            if (artin[a] >= 0 && group->char_exponent(chi, artin[a]) != 0) trivial = false;
        if (trivial) return d;
    }
    return modulus;
}

bool AbelianRealization::is_even(int chi) const {
    if (modulus <= 2) return true;
    return group->char_exponent(chi, artin[modulus - 1]) == 0;
}

std::optional<int> AbelianRealization::primitive_exponent(int chi, long n) const {
    const long d = conductor(chi);
    if (std::gcd(n, d) != 1) return std::nullopt;
    long a = ((n % d) + d) % d;
    for (long k = 0; k <= modulus; ++k, a += d)
        if (std::gcd(a, modulus) == 1) return group->char_exponent(chi, artin[a % modulus]);
    throw ConsistencyError("no unit lift found for primitive character value");
}

DirichletChar dirichlet_char(const AbelianRealization& r, int chi) {
    DirichletChar c;
    c.modulus = r.modulus;
    c.exponent = r.group->exponent();
    c.values.assign(r.modulus, -1);
    for (long a = 0; a < r.modulus; ++a)
        if (r.artin[a] >= 0) c.values[a] = r.group->char_exponent(chi, r.artin[a]);
    c.conductor = r.conductor(chi);
    c.even = r.is_even(chi);
    c.primitive = c.conductor == r.modulus;
    return c;
}

}  // namespace starklab
