#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwn/colored_net.hpp"

namespace cwn {

/// Tuning knobs for the brute-force analyses.  Exploration stops once
/// `state_cap` distinct markings have been enumerated; results computed from a
/// truncated graph are flagged rather than trusted.
struct OracleOptions {
	std::size_t state_cap = 250000;
};

/// Explicit reachability graph of one colored net from one initial marking.
struct StateGraph {
	struct Edge {
		std::size_t from = 0;
		NodeId transition = kNoNode;
		TransformerPair binding;
		std::size_t to = 0;
	};

	std::vector<ColoredMarking> states;  ///< index is the state id; 0 is initial
	std::map<ColoredMarking, std::size_t> index;
	std::vector<Edge> edges;
	std::vector<std::vector<std::size_t>> out_edges;  ///< per state, edge ids
	std::vector<std::vector<std::size_t>> in_edges;
	bool capped = false;

	/// Edge that first discovered each state (npos for the initial state);
	/// following it backwards yields a shortest firing witness.
	static constexpr std::size_t npos = static_cast<std::size_t>(-1);
	std::vector<std::size_t> discovered_by;

	/// True when the marking is exactly one token on the given place.
	static bool is_single_on(const ColoredMarking& m, NodeId place);
};

/// Breadth-first enumeration of every marking reachable from `initial`.
StateGraph explore(const ColoredWorkflowNet& cnet, const ColoredMarking& initial,
                   const OracleOptions& opts = {});

/// One step of a firing witness, already formatted for humans.
struct WitnessStep {
	NodeId transition = kNoNode;
	std::string text;
};

struct SoundnessReport {
	bool sound = false;
	bool capped = false;       ///< verdict unreliable: some exploration hit the cap
	std::string reason;        ///< empty when sound
	std::vector<WitnessStep> witness;  ///< path from an initial marking to the failure
	std::size_t states_explored = 0;
};

/// Classical soundness, decided per entry color and combined: every reachable
/// marking can still complete to a single token on the exit place, and every
/// transition fires in at least one run.
SoundnessReport oracle_is_sound(const ColoredWorkflowNet& cnet,
                                const OracleOptions& opts = {});

/// k-soundness: from k entry tokens (per entry color), every reachable marking
/// can still reach a marking of exactly k tokens, all on the exit place.
/// There is no transition-coverage clause here.
SoundnessReport oracle_is_k_sound(const ColoredWorkflowNet& cnet, unsigned k,
                                  const OracleOptions& opts = {});

/// Input/output relation realized by complete runs: for each entry color v,
/// the exit colors w such that some run from {entry:v} ends in {exit:w}.
struct SummaryReport {
	std::map<ColorValue, std::vector<ColorValue>> pairs;  ///< values sorted, unique
	bool capped = false;
	std::size_t states_explored = 0;

	bool operator==(const SummaryReport& other) const { return pairs == other.pairs; }
};

SummaryReport oracle_summary(const ColoredWorkflowNet& cnet,
                             const OracleOptions& opts = {});

/// Behavioural comparison used to audit the rewrite rules: two nets are
/// equivalent when their soundness verdicts agree and they realize the same
/// input/output relation.
struct EquivalenceReport {
	bool equivalent = false;
	bool capped = false;
	std::string detail;  ///< first observed difference, empty when equivalent
};

EquivalenceReport check_equivalence(const ColoredWorkflowNet& a,
                                    const ColoredWorkflowNet& b,
                                    const OracleOptions& opts = {});

}
