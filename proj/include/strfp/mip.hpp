#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "strfp/partition.hpp"
#include "strfp/training.hpp"

namespace strfp {

// Variable families of the linearized model.
//   x_<byte>_<bin>        byte-to-bin assignment
//   d_w<i>_<bin>          word fingerprint bits
//   d_q<i>_<bin>          query fingerprint bits
//   eta_<q>_<w>           1 iff the negative pair (q, w) is classified right
//   z_<q>_<w>_<bin>       linearization of (1 - d_w) * d_q per bin
enum class var_family : std::uint8_t { x, d_word, d_query, eta, z };

struct var_ref {
    var_family family = var_family::x;
    int i = 0; // x: byte value, d: string index, eta/z: query index
    int j = 0; // x/d: bin, eta/z: word index
    int k = 0; // z: bin
};

struct var_counts {
    std::size_t x = 0, d = 0, eta = 0, z = 0;
    std::size_t total() const { return x + d + eta + z; }
};

struct constraint_counts {
    std::size_t assignment = 0;  // one bin per alphabet byte
    std::size_t fp_lower = 0;    // x_{c,j} <= d^s_j per distinct char
    std::size_t fp_upper = 0;    // d^s_j <= sum of its chars' x_{c,j}
    std::size_t z_link = 0;      // three bounds tying z to d^q, d^w
    std::size_t eta_link = 0;    // eta <= sum_j z
    std::size_t total() const {
        return assignment + fp_lower + fp_upper + z_link + eta_link;
    }
};

// The serialized mixed-integer model for one training instance, plus the
// name map needed to read a solver's solution back.
class model_instance {
public:
    const var_counts& vars() const { return vars_; }
    const constraint_counts& constraints() const { return constraints_; }
    const std::string& lp_text() const { return lp_text_; }
    const std::unordered_map<std::string, var_ref>& var_names() const { return var_names_; }
    const alphabet& alpha() const { return alpha_; }
    int width() const { return width_; }

private:
    friend model_instance build_mip(const training_instance& inst);

    var_counts vars_;
    constraint_counts constraints_;
    std::string lp_text_;
    std::unordered_map<std::string, var_ref> var_names_;
    alphabet alpha_ = alphabet::printable_ascii();
    int width_ = 0;
};

// Builds the linearized model: maximize the number of correctly classified
// negative pairs subject to assignment and fingerprint-definition constraints.
// Every string in the instance must be nonempty.
model_instance build_mip(const training_instance& inst);

// Writes the LP text (Maximize / Subject To / Binary / End).
void export_lp(const model_instance& model, std::ostream& out);

// Reads `name value` lines (one per line, '#' comments ignored; values within
// 1e-6 of 0 or 1 are rounded) and reconstructs the partition from the x
// variables. Every alphabet byte must end up in exactly one bin.
partition import_solution(const model_instance& model, std::istream& in);

} // namespace strfp
