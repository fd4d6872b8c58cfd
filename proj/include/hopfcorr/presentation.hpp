#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hopfcorr/poly.hpp"
#include "hopfcorr/report.hpp"
#include "hopfcorr/rewrite.hpp"

namespace hopfcorr {

struct GenInfo {
    std::string name;
    Gen star; // index of the adjoint generator
};

/// One summand of a Sweedler expansion Delta(a) = sum a_(1) (x) a_(2).
struct SweedlerTerm {
    Word leg1;
    Word leg2;
    Scalar coeff;
};
using SweedlerExpansion = std::vector<SweedlerTerm>;

/// A Hopf *-algebra presented by generators, a confluent rewriting system
/// and structure-map images on generators, together with a diagonal
/// admissible bijection (positive generator scalings) and, when the
/// presentation carries one, the scaling-group data tau.
class Presentation {
public:
    Presentation(std::string name, Backend backend, std::vector<GenInfo> gens,
                 RewriteSystem rs, std::vector<Tensor2> delta_images,
                 std::vector<Scalar> epsilon_images, std::vector<NCPoly> antipode_images,
                 std::vector<Scalar> alpha_scalings, std::vector<Scalar> tau_scalings,
                 std::map<std::string, std::string> parameters = {});

    const std::string& name() const { return name_; }
    Backend backend() const { return backend_; }
    uint32_t generator_count() const { return uint32_t(gens_.size()); }
    const std::vector<GenInfo>& generators() const { return gens_; }
    Gen star_of(Gen g) const { return gens_.at(g).star; }
    Gen generator_index(const std::string& name) const; // throws ParseError
    std::vector<std::string> generator_names() const;
    const RewriteSystem& rewrite_system() const { return rs_; }
    const std::map<std::string, std::string>& parameters() const { return params_; }

    const std::vector<Tensor2>& delta_images() const { return delta_; }
    const std::vector<Scalar>& epsilon_images() const { return epsilon_; }
    const std::vector<NCPoly>& antipode_images() const { return antipode_; }
    const std::vector<Scalar>& alpha_scalings() const { return alpha_; }
    const std::vector<Scalar>& tau_scalings() const { return tau_; }
    bool alpha_is_identity() const;
    bool tau_is_trivial() const;

    // -- algebra operations ------------------------------------------------
    NCPoly normal_form(const NCPoly& p) const { return rs_.normal_form(p); }
    NCPoly mul(const NCPoly& p, const NCPoly& q) const;
    NCPoly star(const NCPoly& p) const;
    /// Componentwise star on a tensor (no flip): (a (x) b)* = a* (x) b*.
    Tensor2 star(const Tensor2& t) const;
    Tensor2 tensor_mul(const Tensor2& s, const Tensor2& t) const;
    Tensor3 tensor_mul(const Tensor3& s, const Tensor3& t) const;
    Tensor2 flip(const Tensor2& t) const;

    std::vector<Word> basis_words(int max_deg) const { return rs_.basis_words(max_deg); }
    NCPoly unit() const { return NCPoly::unit(backend_); }
    NCPoly gen_poly(Gen g) const { return NCPoly::generator(backend_, g); }

    // -- Hopf structure maps -----------------------------------------------
    Tensor2 delta(const NCPoly& a) const;
    Tensor2 delta(const Word& w) const;
    SweedlerExpansion sweedler(const NCPoly& a) const;
    /// Triple coproduct; throws CoassociativityViolation if the two
    /// bracketings disagree (corrupted presentation).
    Tensor3 delta2(const NCPoly& a) const;
    Scalar epsilon(const Word& w) const;
    Scalar epsilon(const NCPoly& a) const;
    NCPoly antipode(const NCPoly& a) const;

    /// Eigenvalue of the diagonal map alpha^power on a monomial.
    Scalar alpha_eigenvalue(const Word& w, const mpq_class& power = 1) const;
    NCPoly alpha_apply(const NCPoly& a, const mpq_class& power = 1) const;
    /// tau_{i t} as a diagonal map derived from the tau scalings.
    Scalar tau_eigenvalue(const Word& w, const mpq_class& t) const;
    NCPoly tau_apply(const NCPoly& a, const mpq_class& t) const;
    /// Scalings of tau_{i t}, usable as an alpha table.
    std::vector<Scalar> alpha_from_tau(const mpq_class& t) const;

    NCPoly twisted_antipode(const NCPoly& a) const; // S(alpha(a))
    /// Twisted antipode built from an explicit scaling table.
    NCPoly twisted_antipode_with(const NCPoly& a, const std::vector<Scalar>& scalings) const;
    NCPoly apply_scalings(const NCPoly& a, const std::vector<Scalar>& scalings,
                          const mpq_class& power = 1) const;
    NCPoly gamma_apply(const NCPoly& a) const;   // (id + alpha)
    NCPoly gamma_inverse(const NCPoly& a) const; // throws SingularGamma

    /// Copy with a different active alpha (scalings per generator).
    std::shared_ptr<Presentation> with_alpha(std::vector<Scalar> scalings) const;

    // -- verification ------------------------------------------------------
    Report verify_hopf_axioms(int max_deg) const;
    Report verify_admissible() const;
    Report check_local_confluence(std::size_t max_overlap) const {
        return rs_.check_local_confluence(max_overlap);
    }
    /// Full validation used by the loader: confluence + Hopf axioms +
    /// admissibility.
    Report validate(int max_deg = 3, std::size_t max_overlap = 0) const;

    std::string word_str(const Word& w) const;
    std::string poly_str(const NCPoly& p) const;

private:
    Tensor2 apply_legs(const Tensor2& t, const std::function<NCPoly(const Word&)>& f1,
                       const std::function<NCPoly(const Word&)>& f2) const;

    std::string name_;
    Backend backend_;
    std::vector<GenInfo> gens_;
    RewriteSystem rs_;
    std::vector<Tensor2> delta_;
    std::vector<Scalar> epsilon_;
    std::vector<NCPoly> antipode_;
    std::vector<Scalar> alpha_;
    std::vector<Scalar> tau_;
    std::map<std::string, std::string> params_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

} // namespace hopfcorr
