#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "densitymod/harmonic.hpp"

namespace densitymod {

// Global indexing of a graded basis: labels in order, each a contiguous range.
struct Layout {
    int n = 0;
    int cap = 0;
    std::vector<int> labels;
    std::map<int, int> offset;
    std::map<int, int> dim;
    std::vector<int> label_at;  // label of each global index
    int total = 0;

    static Layout of(const GradedBasis& b);
    int degree(int label) const { return label < 0 ? -label : label; }
};

// Action of one generator on the graded basis. Columns whose source degree
// exceeds source_cap are left empty: their images leave the basis.
struct GradedOperator {
    GeneratorTag tag;
    std::shared_ptr<const Layout> layout;
    SparseMatrix mat;
    int source_cap = 0;

    Matrix block(int target, int source) const;
    // (target, source) label pairs with a nonzero block
    std::set<std::pair<int, int>> nonzero_blocks() const;
    bool band_ok() const;
    bool diagonal() const;
};

// Exact action computed directly at basis.lambda().
GradedOperator action_matrix(const GeneratorTag& tag, const GradedBasis& basis);
// Same result assembled as A0 + lambda A1, where A0 and A1 are computed once
// per (n, cap) and cached.
GradedOperator action_matrix_cached(const GeneratorTag& tag, const GradedBasis& basis);
std::vector<GradedOperator> all_action_matrices(const GradedBasis& basis);
void clear_action_cache();

struct CheckReport {
    bool ok = true;
    std::string detail;
};

// Rot(i,j) and W_i = (Trans(i) - Sconf(i))/2 must preserve every degree.
CheckReport compact_subalgebra_check(const GradedBasis& basis);
// Rotation operators coincide at two values of lambda.
CheckReport rotation_lambda_independence(int n, int D, const GaussianRational& l1, const GaussianRational& l2);

struct CommutatorReport {
    int pairs = 0;
    int nonzero_entries = 0;  // total over all pairs; zero means exact
    std::string worst;
};
// [a(X), a(Y)] - a([X,Y]) on sources of degree <= cap - 2.
CommutatorReport commutator_check(const GradedBasis& basis);
CommutatorReport commutator_check(const GradedBasis& basis, const std::vector<GradedOperator>& ops);

// Reachability between K-types of degree <= node_cap. Edges into degrees
// above node_cap are kept separately.
struct Graph {
    int n = 0;
    int node_cap = 0;
    std::vector<int> nodes;
    std::set<std::pair<int, int>> edges;  // from, to (both nodes)
    std::set<int> leaks;                  // nodes with an edge above node_cap

    bool has_edge(int a, int b) const { return edges.count({a, b}) != 0; }
};
Graph reachability(const std::vector<GradedOperator>& ops, int node_cap);

struct DegreeSet {
    std::vector<int> labels;  // sorted
    bool truncated = false;   // reaches the cap; only consistent up to truncation
    bool simple = false;      // minimal nonzero invariant set
    int cap = 0;              // largest degree considered
    std::string describe(int n) const;
    bool operator==(const DegreeSet& o) const { return labels == o.labels; }
};
// Proper nonempty invariant sets that are closures of a single node.
std::vector<DegreeSet> submodule_scan(const Graph& g);
// Strongly connected components, i.e. composition factors, in label order.
std::vector<DegreeSet> composition_factors(const Graph& g);

struct FormResult {
    bool exists = false;      // nonzero invariant sesquilinear form of the diagonal shape
    bool hermitian = false;   // weights real
    int family_dim = 0;       // dimension of the solution space
    std::map<int, GaussianRational> weights;  // normalized at the lowest degree
    bool unitary = false;
    std::string verdict;      // "unitary", "not unitary", "none", "undetermined"
};
// Invariant Hermitian form B = sum_m d_m <.,.>_{L2, degree m} on the span of the
// given labels, for the action restricted to those labels.
FormResult invariant_form(const GradedBasis& basis, const std::vector<GradedOperator>& ops,
                          const std::vector<int>& labels);

struct ExpectedFactor {
    DegreeSet set;       // truncated to the node cap
    std::string role;    // "full", "submodule", "quotient"
    bool finite = false;
    bool unitary = false;
};
struct ExpectedClassification {
    bool simple = true;
    std::vector<ExpectedFactor> factors;
    std::vector<DegreeSet> simple_submodules;
};
ExpectedClassification expected_table(int n, const GaussianRational& lambda, int D);

struct FactorVerdict {
    DegreeSet set;
    std::string role;  // "full", "submodule", "quotient", "subquotient"
    FormResult form;
};
struct PaperDiscrepancy {
    std::string topic;
    std::string computed;
    std::string reading_a;
    std::string reading_b;
};
struct ClassificationVerdict {
    int n = 0;
    GaussianRational lambda;
    int D = 0;
    bool simple = false;
    std::vector<DegreeSet> invariant_sets;
    std::vector<FactorVerdict> factors;
    ExpectedClassification expected;
    bool agreement = false;
    std::vector<std::string> disagreements;
    std::vector<PaperDiscrepancy> discrepancies;
};
ClassificationVerdict classify(int n, const GaussianRational& lambda, int D = 8);

}  // namespace densitymod
