// operators.hpp — labeled operators on the truncated space and their algebra
//
// Truncation contract: every operator built here shifts the Fock occupation
// by at most 1, so a product of two operators corrupts only the top two Fock
// levels of the truncated space. Identities that hold on the infinite space
// are therefore asserted after conjugation by the margin-2 interior
// projector; interior_residual implements exactly that.

#pragma once

#include "rabi/core.hpp"
#include "rabi/format.hpp"
#include "rabi/hilbert.hpp"
#include "rabi/jacobi.hpp"
#include "rabi/params.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace rabi {

struct Op {
    Space space;
    std::string label;
    Matrix data;
};

enum class Ladder { a, a_dagger };
enum class SpinKind { sz, sp, sm };
enum class ExKind { N, Nbar };
enum class TransKind { A, Abar };
enum class EvKind { U0, U0bar };

// Hamiltonian forms, named by component and the shape they are built in:
// the plain ladder/spin form, the excitation-number form, the transition-
// operator form, the symmetrized full model, and the chirality-weighted mix.
enum class HamForm { jc_1c, ajc_1d, jc_2d, ajc_2d, jc_3f, ajc_3f, rabi_1a, rabi_r };

// Model tag shared by spectra, dynamics and the CLI.
enum class Model { jc, ajc, rabi };

inline HamForm base_form(Model m) {
    switch (m) {
        case Model::jc: return HamForm::jc_1c;
        case Model::ajc: return HamForm::ajc_1d;
        case Model::rabi: return HamForm::rabi_r;
    }
    throw std::invalid_argument("base_form: unknown model tag");
}

inline const char* model_name(Model m) {
    switch (m) {
        case Model::jc: return "jc";
        case Model::ajc: return "ajc";
        default: return "rabi";
    }
}

inline Model parse_model(const std::string& name) {
    if (name == "jc") return Model::jc;
    if (name == "ajc") return Model::ajc;
    if (name == "rabi") return Model::rabi;
    throw std::invalid_argument("model: expected one of jc, ajc, rabi");
}

namespace detail {

inline Matrix zero_matrix(const Space& s) { return Matrix::Zero(s.dim, s.dim); }

inline std::string combined_label(const std::string& a, const std::string& b,
                                  const char* joiner) {
    std::string out = a + joiner + b;
    return out.size() <= 32 ? out : std::string("expr");
}

inline void require_same_space(const Op& x, const Op& y, const char* who) {
    if (!(x.space == y.space))
        throw std::invalid_argument(std::string(who) + ": operand dimension mismatch");
}

}  // namespace detail

// ---------------------------- elementary builders ---------------------------

// a |n,sigma> = sqrt(n) |n-1,sigma>; a_dagger is its adjoint. The top Fock
// level simply has no outgoing a_dagger element (the truncation artifact).
inline Op ladder(const Space& s, Ladder which) {
    Matrix m = detail::zero_matrix(s);
    for (int n = 1; n <= s.n_max; ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        for (Level sig : {Level::e, Level::g}) {
            const int from = basis_index(s, {n, sig});
            const int to = basis_index(s, {n - 1, sig});
            m(to, from) = amp;
        }
    }
    if (which == Ladder::a_dagger) return Op{s, "ad", m.adjoint()};
    return Op{s, "a", std::move(m)};
}

inline Op spin(const Space& s, SpinKind which) {
    Matrix m = detail::zero_matrix(s);
    for (int n = 0; n <= s.n_max; ++n) {
        const int ie = basis_index(s, {n, Level::e});
        const int ig = basis_index(s, {n, Level::g});
        switch (which) {
            case SpinKind::sz:
                m(ie, ie) = 0.5;
                m(ig, ig) = -0.5;
                break;
            case SpinKind::sp:
                m(ie, ig) = 1.0;
                break;
            case SpinKind::sm:
                m(ig, ie) = 1.0;
                break;
        }
    }
    const char* label = which == SpinKind::sz ? "sz" : which == SpinKind::sp ? "sp" : "sm";
    return Op{s, label, std::move(m)};
}

// N = ad*a + sp*sm has exact integer diagonal even after truncation, so it is
// built directly. Nbar = a*ad + sm*sp is built as the literal product; its
// diagonal at n = n_max is a truncation artifact quarantined by the margin.
inline Op excitation_number(const Space& s, ExKind which) {
    if (which == ExKind::N) {
        Matrix m = detail::zero_matrix(s);
        for (int i = 0; i < s.dim; ++i) {
            const BasisState b = basis_state(s, i);
            m(i, i) = static_cast<double>(b.n + (b.sigma == Level::e ? 1 : 0));
        }
        return Op{s, "N", std::move(m)};
    }
    const Matrix a = ladder(s, Ladder::a).data;
    const Matrix ad = ladder(s, Ladder::a_dagger).data;
    const Matrix sp = spin(s, SpinKind::sp).data;
    const Matrix sm = spin(s, SpinKind::sm).data;
    return Op{s, "Nbar", a * ad + sm * sp};
}

inline Op transition(const Space& s, const DerivedParams& d, TransKind which) {
    const Matrix a = ladder(s, Ladder::a).data;
    const Matrix ad = ladder(s, Ladder::a_dagger).data;
    const Matrix sz = spin(s, SpinKind::sz).data;
    const Matrix sp = spin(s, SpinKind::sp).data;
    const Matrix sm = spin(s, SpinKind::sm).data;
    if (which == TransKind::A) return Op{s, "A", d.alpha * sz + a * sp + ad * sm};
    return Op{s, "Abar", d.alpha_bar * sz + a * sm + ad * sp};
}

inline Op hamiltonian(const Space& s, const ModelParams& p, HamForm form) {
    validate(p);
    const DerivedParams d = derive(p);
    const Matrix a = ladder(s, Ladder::a).data;
    const Matrix ad = ladder(s, Ladder::a_dagger).data;
    const Matrix sz = spin(s, SpinKind::sz).data;
    const Matrix sp = spin(s, SpinKind::sp).data;
    const Matrix sm = spin(s, SpinKind::sm).data;
    const Matrix id = Matrix::Identity(s.dim, s.dim);

    switch (form) {
        case HamForm::jc_1c:
            return Op{s, "H", p.omega * (ad * a) + p.omega0 * sz +
                                  2.0 * p.g * (a * sp + ad * sm)};
        case HamForm::ajc_1d:
            return Op{s, "Hbar", p.omega * (a * ad) + p.omega0 * sz +
                                     2.0 * p.g * (a * sm + ad * sp)};
        case HamForm::jc_2d: {
            const Matrix n = excitation_number(s, ExKind::N).data;
            return Op{s, "H", p.omega * n +
                                  2.0 * p.g * (d.alpha * sz + a * sp + ad * sm) -
                                  0.5 * p.omega * id};
        }
        case HamForm::ajc_2d: {
            const Matrix nbar = excitation_number(s, ExKind::Nbar).data;
            return Op{s, "Hbar", p.omega * nbar +
                                     2.0 * p.g * (d.alpha_bar * sz + a * sm + ad * sp) -
                                     0.5 * p.omega * id};
        }
        case HamForm::jc_3f: {
            const Matrix t = transition(s, d, TransKind::A).data;
            return Op{s, "H", p.omega * (t * t) + 2.0 * p.g * t -
                                  (0.25 * p.omega * d.alpha * d.alpha + 0.5 * p.omega) * id};
        }
        case HamForm::ajc_3f: {
            const Matrix t = transition(s, d, TransKind::Abar).data;
            return Op{s, "Hbar", p.omega * (t * t) + 2.0 * p.g * t -
                                     (0.25 * p.omega * d.alpha_bar * d.alpha_bar -
                                      0.5 * p.omega) * id};
        }
        case HamForm::rabi_1a:
            return Op{s, "HR", 0.5 * p.omega * (ad * a + a * ad) + p.omega0 * sz +
                                   p.g * ((a + ad) * (sp + sm))};
        case HamForm::rabi_r: {
            const Matrix h = hamiltonian(s, p, HamForm::jc_1c).data;
            const Matrix hbar = hamiltonian(s, p, HamForm::ajc_1d).data;
            return Op{s, "HR", 0.5 * ((1.0 + p.r) * h + (1.0 - p.r) * hbar)};
        }
    }
    throw std::invalid_argument("hamiltonian: unknown form tag");
}

// Free evolution exp(-i omega t N) / exp(-i omega t Nbar), built as exact
// diagonal phases (both generators are diagonal in this basis). No
// eigensolver error enters the symmetry checks this way.
inline Op free_evolution(const Space& s, double omega, double t, EvKind which) {
    Matrix m = detail::zero_matrix(s);
    if (which == EvKind::U0) {
        for (int i = 0; i < s.dim; ++i) {
            const BasisState b = basis_state(s, i);
            const double level = static_cast<double>(b.n + (b.sigma == Level::e ? 1 : 0));
            m(i, i) = std::polar(1.0, -omega * t * level);
        }
        return Op{s, "U0(t)", std::move(m)};
    }
    const Matrix nbar = excitation_number(s, ExKind::Nbar).data;
    for (int i = 0; i < s.dim; ++i)
        m(i, i) = std::polar(1.0, -omega * t * nbar(i, i).real());
    return Op{s, "U0bar(t)", std::move(m)};
}

// Parity exp(-i pi N): diagonal entries (-1)^n for |n,g>, (-1)^(n+1) for
// |n,e>, exactly +-1. parity(s, k) returns the k-th power.
inline Op parity(const Space& s, int power = 1) {
    if (power < 0) throw std::invalid_argument("parity: power must be >= 0");
    Matrix m = detail::zero_matrix(s);
    for (int i = 0; i < s.dim; ++i) {
        const BasisState b = basis_state(s, i);
        const int level = b.n + (b.sigma == Level::e ? 1 : 0);
        const bool odd = (level * power) % 2 != 0;
        m(i, i) = odd ? -1.0 : 1.0;
    }
    return Op{s, "Pi", std::move(m)};
}

// Diagonal 0/1 selector of all |n,sigma> with n <= n_max - margin.
inline Op interior_projector(const Space& s, int margin) {
    const int cut = interior_cut(s, margin);
    Matrix m = detail::zero_matrix(s);
    for (int i = 0; i < s.dim; ++i)
        if (fock_of_index(i) <= cut) m(i, i) = 1.0;
    return Op{s, "P", std::move(m)};
}

// ------------------------------ matrix algebra ------------------------------

inline Op mul(const Op& x, const Op& y) {
    detail::require_same_space(x, y, "mul");
    return Op{x.space, detail::combined_label(x.label, y.label, "*"), x.data * y.data};
}

inline Op add(const Op& x, const Op& y) {
    detail::require_same_space(x, y, "add");
    return Op{x.space, detail::combined_label(x.label, y.label, "+"), x.data + y.data};
}

inline Op sub(const Op& x, const Op& y) {
    detail::require_same_space(x, y, "sub");
    return Op{x.space, detail::combined_label(x.label, y.label, "-"), x.data - y.data};
}

inline Op scale(cplx factor, const Op& x) {
    return Op{x.space, x.label, factor * x.data};
}

inline Op adjoint(const Op& x) {
    return Op{x.space, x.label + "^dag", x.data.adjoint()};
}

inline Op commutator(const Op& x, const Op& y) {
    detail::require_same_space(x, y, "commutator");
    return Op{x.space, detail::combined_label(x.label, y.label, ","),
              x.data * y.data - y.data * x.data};
}

inline double frobenius_norm(const Op& x) { return x.data.norm(); }

inline double max_abs(const Op& x) { return x.data.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double rtol = 1e-13) {
    return hermiticity_defect(m) <= rtol * std::max(m.norm(), 1e-300);
}

// exp(-i theta X) for Hermitian X, via one eigendecomposition.
inline Op expm_hermitian(const Op& x, double theta) {
    const EighResult es = eigh_jacobi(x.data);
    const Eigen::Index n = x.data.rows();
    Vector phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases(k) = std::polar(1.0, -theta * es.eigenvalues(k));
    Matrix out = es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
    return Op{x.space, "exp(-i*theta*" + x.label + ")", std::move(out)};
}

// Frobenius norm of P X P without forming the products: sum over the
// entries whose row and column Fock levels survive the margin.
inline double interior_frobenius(const Matrix& m, const Space& s, int margin) {
    const int cut = interior_cut(s, margin);
    double sum = 0.0;
    for (int i = 0; i < s.dim; ++i) {
        if (fock_of_index(i) > cut) continue;
        for (int j = 0; j < s.dim; ++j) {
            if (fock_of_index(j) > cut) continue;
            sum += std::norm(m(i, j));
        }
    }
    return std::sqrt(sum);
}

inline double interior_residual(const Op& x, int margin) {
    return interior_frobenius(x.data, x.space, margin);
}

// ------------------------------- CSV dump -----------------------------------

// Header "row,col,re,im"; entries with |z| > 1e-15 only, basis-index order.
inline void write_matrix_csv(std::ostream& out, const Op& op) {
    out << "row,col,re,im\n";
    for (int i = 0; i < op.space.dim; ++i) {
        for (int j = 0; j < op.space.dim; ++j) {
            const cplx z = op.data(i, j);
            if (std::abs(z) <= 1e-15) continue;
            out << i << ',' << j << ',' << format_double(z.real()) << ','
                << format_double(z.imag()) << '\n';
        }
    }
}

}  // namespace rabi
