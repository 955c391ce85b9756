#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwn/colored_net.hpp"

namespace cwn {

enum class RuleKind { Merge, Iteration, Shortcut, DShortcut };

const char* to_string(RuleKind k);

/// One applicable rule instance. Operands are:
///   Merge:               {t1, t2}
///   Iteration:           {t}
///   Shortcut/DShortcut:  {t, cluster representative}
struct Candidate {
	RuleKind kind;
	std::vector<NodeId> operands;

	bool operator==(const Candidate& o) const {
		return kind == o.kind && operands == o.operands;
	}
	bool operator<(const Candidate& o) const {
		if (kind != o.kind) return kind < o.kind;
		return operands < o.operands;
	}
};

/// Record of one applied rule, sufficient to replay it on the pre-state.
struct RuleApplication {
	RuleKind kind = RuleKind::Merge;
	std::vector<NodeId> operands;
	std::vector<NodeId> created;
	std::vector<NodeId> removed;
	std::size_t places_after = 0;
	std::size_t transitions_after = 0;
	std::size_t clusters_after = 0;
	std::string note;
};

struct RuleCounts {
	std::size_t merge = 0;
	std::size_t iteration = 0;
	std::size_t shortcut = 0;
	std::size_t d_shortcut = 0;

	std::size_t total() const { return merge + iteration + shortcut + d_shortcut; }
	std::size_t shortcut_total() const { return shortcut + d_shortcut; }
	void bump(RuleKind k);
};

struct ReductionTrace {
	std::vector<RuleApplication> steps;
	RuleCounts counts;

	void record(const RuleApplication& app);
};

struct RuleResult {
	ColoredWorkflowNet net;
	RuleApplication app;
};

/// Guard probes: nullopt means the guard holds, otherwise the reason it
/// fails. Guards are evaluated on the current net; nothing is cached.
std::optional<std::string> merge_guard_failure(const ColoredWorkflowNet& cnet,
                                               NodeId t1, NodeId t2);
std::optional<std::string> iteration_guard_failure(const ColoredWorkflowNet& cnet, NodeId t);
std::optional<std::string> shortcut_guard_failure(const ColoredWorkflowNet& cnet, NodeId t,
                                                  NodeId cluster_rep, bool direct_only);

/// Replaces two transitions with equal presets and postsets by a fresh one
/// whose transformer is the union. Throws GuardError when the guard fails.
RuleResult apply_merge(const ColoredWorkflowNet& cnet, NodeId t1, NodeId t2);

/// Removes a self-looping transition of a free choice cluster and folds
/// its closure into the remaining cluster transitions. The cluster must
/// keep at least one transition.
RuleResult apply_iteration(const ColoredWorkflowNet& cnet, NodeId t);

/// Skips over a free choice cluster unconditionally enabled by t: every
/// cluster transition gains a composed sibling fired from t's preset, t is
/// removed, and the cluster disappears when nothing feeds it any more.
/// `direct_only` restricts to single-transition clusters, which never
/// increases the arc count.
RuleResult apply_shortcut(const ColoredWorkflowNet& cnet, NodeId t, NodeId cluster_rep,
                          bool direct_only);

RuleResult apply_candidate(const ColoredWorkflowNet& cnet, const Candidate& c);

/// All instances of one rule kind, ordered by ascending operand ids.
std::vector<Candidate> enumerate_applicable(const ColoredWorkflowNet& cnet, RuleKind kind);

}
