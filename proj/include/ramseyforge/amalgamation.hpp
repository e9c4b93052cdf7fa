#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/fraisse.hpp"
#include "ramseyforge/structures.hpp"

namespace ramseyforge {

// Amalgamation data: a common substructure Z embedded into X and Y.
struct AmalgamationProblem {
    OrderedStructure z, x, y;
    Embedding e;  // Z -> X
    Embedding f;  // Z -> Y

    void validate() const;  // throws DomainError
};

// A total order prescription on pairs (x-point, y-point): one of '<', '=', '>'
// per cell of a K x L grid.
class OrderPrescription {
public:
    OrderPrescription(int rows, int cols, char fill = '<');

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    char at(int k, int l) const { return cells_[static_cast<size_t>(k) * cols_ + l]; }
    void set(int k, int l, char c);

    // Grid of '<', '=', '>' characters, one row per line.
    std::string to_text() const;
    static OrderPrescription parse(const std::string& text);

    friend bool operator==(const OrderPrescription&, const OrderPrescription&) = default;

private:
    int rows_, cols_;
    std::vector<char> cells_;
};

struct PrescriptionCheck {
    bool ok = true;
    std::string clause;  // violated clause: "a", "b", "c", or "d"
    std::string detail;
};

// Checks the prescription against the problem's shared part: '=' exactly on
// matched Z-pairs (a, c), monotone compatibility around Z-points (b), and
// order consistency (d). Clause (d) is enforced in closed form (k' <= k,
// l' >= l); with strict inequalities only, prescriptions with no consistent
// merge would pass.
PrescriptionCheck validate_prescription(const AmalgamationProblem& p, const OrderPrescription& rho);

struct AmalgamResult {
    OrderedStructure w;
    Embedding g;               // X -> W
    Embedding h;               // Y -> W
    std::vector<int> sigma;    // merge map on K + L positions
};

// Builds the free amalgam prescribed by rho: Z-points identified, every other
// point ordered per rho, and no relations beyond the images of X's and Y's.
// Throws ValidationError when rho fails validate_prescription.
AmalgamResult free_amalgamate(const AmalgamationProblem& p, const OrderPrescription& rho);

// Free amalgam under the default prescription: between consecutive Z-points,
// remaining x-points precede remaining y-points.
AmalgamResult strong_amalgamate(const AmalgamationProblem& p);
OrderPrescription default_prescription(const AmalgamationProblem& p);

// All prescriptions valid for the problem, generated from the order-preserving
// merges of the two universes; deterministic order.
std::vector<OrderPrescription> enumerate_prescriptions(const AmalgamationProblem& p);

struct OpfapWitness {
    OrderedStructure z, x, y;
    Embedding e, f;
    OrderPrescription rho;
    std::string reason;
};

struct OpfapReport {
    bool pass = true;
    std::optional<OpfapWitness> witness;
    uint64_t amalgams_checked = 0;
};

// For all class members up to size_cap, all embedding pairs and all valid
// prescriptions: the free amalgam must land in the class and satisfy the
// construction's guarantees. Returns the first failing witness in
// lexicographic (Z, X, Y, e, f, rho) order.
OpfapReport verify_opfap(const FraisseClass& cls, int size_cap, uint64_t budget);

}  // namespace ramseyforge
