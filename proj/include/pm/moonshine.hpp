#pragma once

#include "pm/arith.hpp"
#include "pm/dataio.hpp"
#include "pm/jacobi.hpp"
#include "pm/rademacher.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pm {

struct ClassSpec {
    std::string class_name;    // as printed in the characters table, e.g. "24CD"
    long n = 1, h = 1, v = 1;
    std::vector<ThetaTerm> theta_corrections;
    bool special_matrix = false;
};

enum class Source { rademacher, table };
const char* source_name(Source s);

struct MTSeries {
    Lambdency lambdency;
    ClassSpec class_spec;
    VectorForm form;
    Source provenance = Source::table;
};

// One verdict: (lambdency, check, location, expected, got).
struct CheckLine {
    bool pass = true;
    std::string lambdency, check, location, expected, got;
    std::string str(bool machine = false) const;
};

struct Report {
    std::vector<CheckLine> lines;
    bool ok() const;
    size_t failures() const;
    void add(bool pass, std::string lambdency, std::string check, std::string location,
             std::string expected = "", std::string got = "");
    void append(const Report& o);
};

// Everything under the data directory, loaded once.
class Dataset {
public:
    explicit Dataset(const std::string& dir = default_data_dir());

    const std::string& dir() const { return dir_; }
    const std::vector<GroupRow>& groups() const { return groups_; }

    // "D0:l" with r0 and the group-table constants filled in
    Lambdency lambdency(const std::string& text) const;
    // the lambdencies of the group tables for D0 (ordered by level)
    std::vector<Lambdency> lambdencies(long D0) const;

    std::vector<std::string> tabulated() const;
    bool has_table(const std::string& lam) const;
    // per-class coefficient columns, every part merged
    const std::map<std::string, VectorForm>& table(const std::string& lam) const;
    const std::vector<std::string>& table_columns(const std::string& lam) const;
    // listed cells above the table's completeness bound (usually none)
    const std::map<DR, mpq_class>& beyond(const std::string& lam, const std::string& column) const;

    bool has_characters(const std::string& lam) const;
    // character rows in file order, theta corrections and the A flag attached
    const std::vector<ClassSpec>& classes(const std::string& lam) const;
    // by exact label or by membership in a merged label ("12A" -> "12AB")
    ClassSpec class_spec(const std::string& lam, const std::string& label) const;
    const std::map<std::string, std::vector<ThetaTerm>>& theta_table(const std::string& lam) const;
    const std::vector<SingularEntry>& singular(const std::string& lam) const;
    std::vector<std::string> singular_lambdencies() const;

    const std::vector<RelationDescriptor>& relations(long D0) const;
    const std::map<std::string, std::vector<PowerMapEntry>>& power_maps() const { return power_; }
    const std::vector<ParityRecipe>& parity() const { return parity_; }
    const std::vector<SturmRow>& sturm() const { return sturm_; }
    const std::vector<LambencyRow>& lambency_rows() const { return lambencies_; }

private:
    std::string dir_;
    std::vector<GroupRow> groups_;
    std::map<std::string, std::map<std::string, VectorForm>> tables_;
    std::map<std::string, std::vector<std::string>> columns_;
    std::map<std::string, std::map<std::string, std::map<DR, mpq_class>>> beyond_;
    std::map<std::string, std::vector<ClassSpec>> classes_;
    std::map<std::string, std::map<std::string, std::vector<ThetaTerm>>> theta_;
    std::map<std::string, std::vector<SingularEntry>> singular_;
    std::map<long, std::vector<RelationDescriptor>> relations_;
    std::map<std::string, std::vector<PowerMapEntry>> power_;
    std::vector<ParityRecipe> parity_;
    std::vector<SturmRow> sturm_;
    std::vector<LambencyRow> lambencies_;
};

// the genus-zero Fricke lambency of level m admitting D0
std::string lambency_for_level(long D0, long m);

struct AssembleOptions {
    Source source = Source::table;
    long cmax = 1024;
    long dmax = 21;
    double tol = 0.2;
    unsigned workers = 0;
    std::function<void(long, long)> progress;
};

// diag(1,-1/2,-1/2,1,-1/2,-1/2) on residues mod 6
RationalMatrix special_matrix_A();

// F_g = M_g (C(D0,r0) R + sum kappa theta_m(k^2 tau)), or the shipped column
MTSeries assemble(const Dataset& ds, const Lambdency& lam, const ClassSpec& cls,
                  const AssembleOptions& opt);
struct AssembleDiagnostics {
    NormalizedSum sum;
};
MTSeries assemble_rademacher(const Lambdency& lam, const ClassSpec& cls, const AssembleOptions& opt,
                             AssembleDiagnostics* diag = nullptr);

// exact comparison of a computed series with the shipped column on the common range
Report compare_with_table(const MTSeries& computed, const VectorForm& table,
                          const std::string& column, const std::map<DR, mpq_class>& beyond = {});

// support, parity, symmetry, optimality, lambency condition, group constants,
// C(1,1) = 0, cross-table class names
Report table_integrity(const Dataset& ds, const std::string& lam);

Report congruence_check(const MTSeries& gp, const MTSeries& g, long p, long bound,
                        std::optional<long> sturm_bound = std::nullopt);
// all shipped power-map pairs that have columns in the tables
Report congruence_suite(const Dataset& ds);

// one relation block against the two tables; each lhs class must match some
// member of one of the listed rhs alternatives
Report relation_check(const RelationDescriptor& rel, const std::map<std::string, VectorForm>& lhs,
                      const std::map<std::string, VectorForm>& rhs);
Report relation_suite(const Dataset& ds, long D0);

// f + sum coeff * theta(scale tau) = 0 mod modulus through exponent bound,
// theta(q) = sum_{n in Z} q^(n^2)
Report parity_check(const QSeries& fbreve, const std::vector<std::pair<mpq_class, long>>& recipe,
                    long modulus, long bound, const std::string& label = "");
Report parity_suite(const Dataset& ds);

struct CyclicDecomposition {
    long order = 1;
    std::vector<std::string> columns;    // column for g^k, k = 0..order-1
    std::map<DR, std::vector<mpq_class>> multiplicities;    // index j: character g -> e(j/N)
    std::vector<DR> nonintegral;
};
// exponent k with class = g^k for a cyclic group of order N, by order and letter
long cyclic_power(const std::string& class_label, long group_order);
CyclicDecomposition decompose_cyclic(const std::map<std::string, VectorForm>& family,
                                     long group_order);
Report cyclic_suite(const Dataset& ds);

struct SturmAccount {
    std::string lambdency;
    long k = 0, N = 0, n = 0, h = 0;
    mpq_class B;
};
SturmAccount sturm_accounting(const Dataset& ds, const Lambdency& lam, long k);
Report sturm_suite(const Dataset& ds);

} // namespace pm
