#include "lldlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "lldlab/summation.hpp"

namespace lldlab {

void validate(const DirichletSeries& f) {
    if (f.lambdas.size() != f.coeffs.size())
        throw std::invalid_argument(
            "dirichlet: frequency and coefficient counts differ");
    double prev = 0.0;
    for (double l : f.lambdas) {
        if (!(l > prev))
            throw std::invalid_argument(
                "dirichlet: frequencies must be strictly increasing and positive");
        prev = l;
    }
}

std::complex<double> evaluate(const DirichletSeries& f, std::complex<double> s) {
    validate(f);
    if (!(s.real() > f.abscissa))
        throw std::domain_error(
            "evaluate: outside half-plane of absolute convergence");
    CompensatedSum<std::complex<double>> sum;
    // smallest terms first: largest frequencies decay hardest
    for (std::size_t i = f.lambdas.size(); i-- > 0;)
        sum.add(f.coeffs[i] * std::exp(-f.lambdas[i] * s));
    sum.add(1.0);
    return sum.value();
}

std::vector<FrequencyVector> lattice_enumerate(const std::vector<double>& lambdas,
                                               double T, std::size_t cap) {
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (!(lambdas[i] > 0.0) ||
            (i > 0 && !(lambdas[i] > lambdas[i - 1])))
            throw std::invalid_argument(
                "lattice_enumerate: frequencies must be strictly increasing "
                "and positive");
    std::vector<FrequencyVector> out;
    if (lambdas.empty() || T < lambdas.front()) return out;
    const std::size_t m = lambdas.size();

    auto dot = [&](const std::vector<int>& k) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += k[j] * lambdas[j];
        return s;
    };
    auto norm_of = [&](const std::vector<int>& k) {
        int n = 0;
        for (int v : k) n += v;
        return n;
    };
    auto first_nonzero = [&](const std::vector<int>& k) {
        for (std::size_t j = 0; j < m; ++j)
            if (k[j] > 0) return j;
        return m;
    };

    struct Node {
        double freq;
        std::vector<int> k;
        bool operator>(const Node& o) const {
            if (freq != o.freq) return freq > o.freq;
            return k > o.k;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> k(m, 0);
        k[j] = 1;
        const double fr = lambdas[j];
        if (fr <= T) heap.push({fr, std::move(k)});
    }
    while (!heap.empty()) {
        Node cur = heap.top();
        heap.pop();
        if (cur.freq > T) break;
        FrequencyVector fv;
        fv.k = cur.k;
        fv.norm = norm_of(cur.k);
        fv.freq = cur.freq;
        out.push_back(std::move(fv));
        if (out.size() > cap)
            throw std::runtime_error(
                "lattice_enumerate: more than " + std::to_string(cap) +
                " frequency vectors below the cutoff; lower T or raise the cap");
        // each multiset is built once: only positions up to the leftmost
        // nonzero entry may be incremented
        const std::size_t limit = first_nonzero(cur.k);
        for (std::size_t j = 0; j <= limit && j < m; ++j) {
            std::vector<int> child = cur.k;
            ++child[j];
            const double fr = dot(child);
            if (fr <= T) heap.push({fr, std::move(child)});
        }
    }
    return out;
}

std::complex<double> bk_multinomial(const FrequencyVector& kvec,
                                    const std::vector<std::complex<double>>& coeffs) {
    if (kvec.k.size() != coeffs.size())
        throw std::invalid_argument(
            "bk_multinomial: vector length does not match coefficient count");
    int n = 0;
    for (int v : kvec.k) {
        if (v < 0)
            throw std::invalid_argument("bk_multinomial: negative entry");
        n += v;
    }
    if (n < 1)
        throw std::invalid_argument("bk_multinomial: zero vector");

    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (kvec.k[j] > 0 && coeffs[j] == std::complex<double>(0.0, 0.0))
            return 0.0;

    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    if (n <= 20) {
        // multinomial as a product of binomials, each exact in double
        double multi = 1.0;
        int rem = n;
        for (int v : kvec.k) {
            if (v == 0) continue;
            double binom = 1.0;
            for (int i = 1; i <= v; ++i)
                binom = binom * (rem - v + i) / i;
            multi *= std::round(binom);
            rem -= v;
        }
        std::complex<double> prod = 1.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            for (int i = 0; i < kvec.k[j]; ++i) prod *= coeffs[j];
        return sign / n * multi * prod;
    }

    // log-magnitude plus phase for large norms
    double log_mag = std::lgamma(n + 1.0) - std::log(static_cast<double>(n));
    double phase = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const int v = kvec.k[j];
        if (v == 0) continue;
        log_mag -= std::lgamma(v + 1.0);
        log_mag += v * std::log(std::abs(coeffs[j]));
        phase += v * std::arg(coeffs[j]);
    }
    return sign * std::exp(log_mag) *
           std::complex<double>(std::cos(phase), std::sin(phase));
}

namespace {

std::vector<Atom> merge_atoms(std::vector<Atom> raw, double rel_tol) {
    std::sort(raw.begin(), raw.end(),
              [](const Atom& a, const Atom& b) { return a.freq < b.freq; });
    std::vector<Atom> out;
    for (const auto& a : raw) {
        if (!out.empty() &&
            std::abs(a.freq - out.back().freq) <= rel_tol * out.back().freq) {
            out.back().mass += a.mass;  // representative stays the first freq
        } else {
            out.push_back(a);
        }
    }
    std::erase_if(out, [](const Atom& a) {
        return a.mass == std::complex<double>(0.0, 0.0);
    });
    return out;
}

}  // namespace

AtomicMeasure log_atoms(const DirichletSeries& f, double T, double merge_tol) {
    validate(f);
    if (!(T > 0.0))
        throw std::invalid_argument("log_atoms: cutoff must be positive");
    AtomicMeasure mu;
    mu.cutoff = T;
    auto vectors = lattice_enumerate(f.lambdas, T);
    std::vector<Atom> raw;
    raw.reserve(vectors.size());
    for (const auto& kv : vectors)
        raw.push_back({kv.freq, bk_multinomial(kv, f.coeffs)});
    mu.atoms = merge_atoms(std::move(raw), merge_tol);
    return mu;
}

AtomicMeasure inverse_laplace_atoms(const DirichletSeries& f, double T,
                                    double merge_tol) {
    AtomicMeasure mu = log_atoms(f, T, merge_tol);
    for (auto& a : mu.atoms) a.mass *= a.freq;
    return mu;
}

AtomicMeasure series_log_oracle(const DirichletSeries& f, double T,
                                double merge_tol) {
    validate(f);
    if (!(T > 0.0))
        throw std::invalid_argument("series_log_oracle: cutoff must be positive");
    AtomicMeasure mu;
    mu.cutoff = T;
    if (f.lambdas.empty() || T < f.lambdas.front()) return mu;

    auto squash = [](std::vector<Atom> v) {
        return merge_atoms(std::move(v), 1e-12);
    };

    std::vector<Atom> g;
    for (std::size_t i = 0; i < f.lambdas.size(); ++i)
        if (f.lambdas[i] <= T) g.push_back({f.lambdas[i], f.coeffs[i]});

    std::vector<Atom> acc;
    std::vector<Atom> power = g;  // g^j as an exponential polynomial
    const int jmax = static_cast<int>(
        std::floor(T / f.lambdas.front() * (1.0 + 1e-12)));
    for (int j = 1; j <= jmax && !power.empty(); ++j) {
        const double w = (j % 2 == 0 ? 1.0 : -1.0) / j;
        for (const auto& a : power) acc.push_back({a.freq, w * a.mass});
        if (j == jmax) break;
        std::vector<Atom> next;
        for (const auto& a : power)
            for (const auto& b : g) {
                const double fr = a.freq + b.freq;
                if (fr <= T * (1.0 + 1e-12))
                    next.push_back({fr, a.mass * b.mass});
            }
        power = squash(std::move(next));
    }
    mu.atoms = merge_atoms(std::move(acc), merge_tol);
    return mu;
}

double roundtrip_check(const DirichletSeries& f, double T,
                       const std::vector<std::complex<double>>& samples) {
    const AtomicMeasure mu = log_atoms(f, T);
    double worst = 0.0;
    for (const auto& s : samples) {
        CompensatedSum<std::complex<double>> ls;
        for (std::size_t i = mu.atoms.size(); i-- > 0;)
            ls.add(mu.atoms[i].mass * std::exp(-mu.atoms[i].freq * s));
        const std::complex<double> back = std::exp(-ls.value());
        worst = std::max(worst, std::abs(back - evaluate(f, s)));
    }
    return worst;
}

}  // namespace lldlab
