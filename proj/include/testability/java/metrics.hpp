#pragma once

#include "testability/core/record.hpp"
#include "testability/java/corpus.hpp"
#include "testability/java/syntax.hpp"

namespace testability::java {

/// 1 + number of if, for, while, do, case labels, catch clauses, ternaries,
/// && and || in the body. Bodiless (abstract, native) methods score 1.
int cyclomatic_complexity(const MethodDecl& method);

// Each compute_* function fills only the metrics of its group. Nested,
// local and anonymous types are folded into the top-level class; constructors
// count as methods everywhere except in the inheritance-based metrics.

/// LOC, LOCCOM, NPM, NSTAM, NOF, NSTAF, NMC, NMCI, NMCE.
MetricValues compute_size_metrics(const CompilationUnit& unit, const TypeDecl& type);

/// WMC, AMC, RFC.
MetricValues compute_complexity_metrics(const TypeDecl& type);

/// DIT, NOC, MFA. Inheritance is judged on the top-level type's own
/// non-constructor methods.
MetricValues compute_inheritance_metrics(const ClassEntry& entry, const CorpusIndex& index);

/// CBO, IC, CBM, Ca, Ce.
MetricValues compute_coupling_metrics(const ClassEntry& entry, const CorpusIndex& index);

/// LCOM, LCOM3, CAM.
MetricValues compute_cohesion_metrics(const TypeDecl& type);

/// DAM, NPRIF, NPRIM, NPROM.
MetricValues compute_encapsulation_metrics(const TypeDecl& type);

/// T-LOC, T-NOT, T-NOA, T-NMC, T-WMC, T-AMC of a test class.
MetricValues compute_test_effort_metrics(const CompilationUnit& unit, const TypeDecl& test_type);

/// All 27 source-level code metrics (everything but NBI).
MetricValues compute_code_metrics(const ClassEntry& entry, const CorpusIndex& index);

}  // namespace testability::java
