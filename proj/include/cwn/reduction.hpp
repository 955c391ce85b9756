#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cwn/colored_net.hpp"
#include "cwn/rules.hpp"

namespace cwn {

/// How a reduction run ended.
///
///  - CompletelyReduced: the net collapsed to entry -> t -> exit; `summary`
///    holds t's transformer, the net's end-to-end input/output relation.
///  - Unsound: the net is free choice and got stuck before collapsing, which
///    for this rule set is a proof of unsoundness.
///  - Irreducible: stuck, but the input was not free choice, so stuckness
///    proves nothing.
///  - Malformed: invalid input, or an internal invariant (rule budget,
///    structural progress) was violated; `detail` explains.
enum class Verdict { CompletelyReduced, Unsound, Irreducible, Malformed };

const char* to_string(Verdict v);

/// Cluster representatives of the potential synchronizers: clusters that can
/// refill themselves. Starting from the cluster's own transitions, outputs
/// into free-choice clusters are marked; a fully marked cluster propagates
/// further. The cluster is a potential synchronizer when its own places all
/// end up marked. This is a cheap overapproximation of "lies on a live
/// cycle"; reps come back in ascending order.
std::vector<NodeId> find_potential_synchronizers(const WorkflowNet& net);

/// A reduction fragment: the backward-closed subnet feeding a potential
/// synchronizer cluster. Grown from the anchor cluster's places by adding
/// any transition whose postset lies inside the fragment and whose preset is
/// reachable from the anchor (inside the anchor's marked-place set), along
/// with that preset.
struct Fragment {
	NodeId anchor = kNoNode;  ///< representative of the anchor cluster
	std::set<NodeId> places;
	std::set<NodeId> transitions;
	bool malformed = false;
	std::string malformed_reason;

	std::vector<NodeId> nodes() const;  ///< places and transitions, sorted
	std::size_t size() const { return places.size() + transitions.size(); }
	bool contains(NodeId n) const { return places.count(n) || transitions.count(n); }
};

/// The fragment anchored at the given potential-synchronizer cluster.
/// `malformed` is set when a transition consumes from the fragment but only
/// partially, ends partly inside and partly outside, or exits through a
/// cluster that is not itself a potential synchronizer.
Fragment compute_fragment(const WorkflowNet& net, NodeId anchor_rep);

/// All candidate fragments of the net, one per potential synchronizer,
/// ordered by (node count, anchor representative). Malformed fragments are
/// included so callers can report why a candidate was rejected.
std::vector<Fragment> candidate_fragments(const WorkflowNet& net);

/// First well-formed candidate in `candidate_fragments` order, if any.
std::optional<Fragment> select_minimal_fragment(const WorkflowNet& net);

/// Snapshot labels recorded while reducing with `keep_snapshots`.
inline constexpr std::string_view kSnapFragmentSelected = "fragment-selected";
inline constexpr std::string_view kSnapFragmentSyncOnly = "fragment-synchronizer-only";
inline constexpr std::string_view kSnapAcyclicStart = "acyclic-phase-start";

/// State of the engine at an interesting moment, for inspection and tests.
struct PhaseSnapshot {
	std::string label;
	NodeId anchor = kNoNode;
	std::vector<NodeId> fragment_nodes;  ///< sorted; empty for acyclic-phase-start
	ColoredWorkflowNet net;
};

struct ReduceOptions {
	bool keep_snapshots = false;
	/// Multiplier on the derived polynomial rule budgets. The defaults are
	/// generous; raising this is only useful when studying pathological nets.
	unsigned long long budget_scale = 1;
};

struct ReduceOutcome {
	Verdict verdict = Verdict::Malformed;
	std::string detail;
	ColoredWorkflowNet net;  ///< residual net (the input itself when Malformed on input)
	ReductionTrace trace;
	std::vector<PhaseSnapshot> snapshots;
	/// End-to-end input/output relation; present iff CompletelyReduced.
	std::optional<Transformer> summary;
};

/// Runs the full reduction: repeatedly pick the smallest synchronizer
/// fragment, drain its non-synchronizer transitions (merge, iteration, and
/// direct shortcuts into non-synchronizer clusters), then break its cycles
/// (merge, iteration, and shortcuts into the fragment's clusters, nearest
/// target first); once the net is acyclic, finish with merges and direct
/// shortcuts in candidate order. Every rule application is recorded in
/// `trace`; ids in a replay match ids in the original run.
ReduceOutcome reduce(const ColoredWorkflowNet& input, const ReduceOptions& opts = {});

/// Just the acyclic completion, for nets that are already acyclic.
ReduceOutcome reduce_acyclic(const ColoredWorkflowNet& input,
                             const ReduceOptions& opts = {});

}
