#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramseyforge/structures.hpp"

namespace ramseyforge {

enum class ClassKind {
    LinearOrders,
    OrderedGraphs,
    OrderedCliqueFree,
    OrderedCompleteGraphs,
    ForbiddenSubstructures,
};

std::string to_string(ClassKind kind);
std::optional<ClassKind> class_kind_from_string(const std::string& name);

struct IsoCountRecord {
    std::string class_name;
    int size = 0;
    uint64_t count = 0;
    bool closed_form = false;
};

struct ClassAxiomReport {
    int size_cap = 0;
    bool heredity = true;
    bool joint_embedding = true;
    bool amalgamation = true;
    // Human-readable witnesses for the first failure of each property.
    std::string heredity_witness;
    std::string jep_witness;
    std::string ap_witness;
    uint64_t cases_checked = 0;

    bool pass() const { return heredity && joint_embedding && amalgamation; }
};

// A named, checkable class of finite ordered relational structures. Custom
// classes are restricted to forbidden-substructure form, which is hereditary
// by construction.
class FraisseClass {
public:
    static FraisseClass linear_orders();
    static FraisseClass ordered_graphs();
    static FraisseClass clique_free(int clique_size);  // forbids the clique of that size
    static FraisseClass complete_graphs();
    static FraisseClass forbidden_substructures(std::string name, Signature sig,
                                                std::vector<OrderedStructure> forbidden);

    const std::string& name() const { return name_; }
    ClassKind kind() const { return kind_; }
    int param() const { return param_; }
    const Signature& signature() const { return sig_; }
    const std::vector<OrderedStructure>& forbidden() const { return forbidden_; }

    bool contains(const OrderedStructure& s) const;

    // All members of the given size, each exactly once, ordered by table
    // lexicographic order. Throws BudgetError when the candidate space is
    // too large.
    std::vector<OrderedStructure> enumerate_members(int size, uint64_t candidate_budget) const;
    uint64_t candidate_count_log2(int size) const;

    // Closed form when available, enumeration otherwise.
    IsoCountRecord iso_count(int size, uint64_t candidate_budget) const;

    // Exhaustive heredity / joint embedding / amalgamation check up to the cap.
    ClassAxiomReport check_class_axioms(int size_cap, uint64_t budget) const;

    // `class <name> kind=<kind> [param=<n>] [forbidden=<file>,...]`
    std::string to_spec_text() const;

    friend bool operator==(const FraisseClass&, const FraisseClass&) = default;

private:
    FraisseClass() = default;

    std::string name_;
    ClassKind kind_ = ClassKind::LinearOrders;
    int param_ = 0;
    Signature sig_;
    std::vector<OrderedStructure> forbidden_;
};

// Parses the class spec text form. `load_file` resolves forbidden-structure
// file references; pass nullptr to reject them.
FraisseClass parse_class_spec(const std::string& line,
                              const std::function<std::string(const std::string&)>* load_file);

// Accepts builtin shorthand: linear-orders, ordered-graphs, complete-graphs,
// clique-free-<n>.
std::optional<FraisseClass> builtin_class(const std::string& shorthand);

}  // namespace ramseyforge
