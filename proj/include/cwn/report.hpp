#pragma once

#include <string>
#include <vector>

#include "cwn/colored_net.hpp"
#include "cwn/reduction.hpp"

namespace cwn {

/// Everything the batch report keeps about one analyzed net.
struct NetOutcome {
	std::string name;
	bool free_choice = false;
	bool acyclic = false;
	Verdict verdict = Verdict::Malformed;
	std::string detail;
	RuleCounts counts;
	std::size_t places_before = 0;
	std::size_t transitions_before = 0;
	std::size_t places_after = 0;
	std::size_t transitions_after = 0;
	double seconds = 0.0;
};

/// Reduces one net and collects its outcome row. Never throws: unexpected
/// failures become a Malformed row carrying the error text.
NetOutcome analyze_one(const ColoredWorkflowNet& cnet, const ReduceOptions& opts = {});

/// The report class of an outcome: {acyclic, cyclic} x {free-choice
/// sound, free-choice unsound, not free-choice}. A free-choice net counts
/// as sound exactly when it reduced completely.
std::string class_label(const NetOutcome& o);

/// Analyzes many nets on a bounded worker pool. Results keep input order;
/// `workers` 0 means one per hardware thread, capped by the input size.
std::vector<NetOutcome> run_batch(const std::vector<ColoredWorkflowNet>& nets,
                                  const ReduceOptions& opts = {}, unsigned workers = 0);

/// One aggregated report row. Sizes describe the original nets of the
/// class; `reduced_by_pct` averages 100*(1 - residual/original) over the
/// members that did not reduce completely and is negative when no such
/// member exists (rendered as a dash).
struct StatsRow {
	std::string label;
	std::size_t count = 0;
	double p_avg = 0.0;
	std::size_t p_med = 0;
	std::size_t p_max = 0;
	double t_avg = 0.0;
	std::size_t t_med = 0;
	std::size_t t_max = 0;
	double reduced_by_pct = -1.0;
	std::size_t rule_apps = 0;
};

/// Aggregates outcomes into rows, one per non-empty class, in the fixed
/// class order acyclic-before-cyclic, sound/unsound/not-free-choice.
/// Medians are lower order statistics of the recorded sizes.
std::vector<StatsRow> aggregate(const std::vector<NetOutcome>& outcomes);

/// Aligned human-readable table over the aggregated rows.
std::string render_report_text(const std::vector<NetOutcome>& outcomes);

/// The same numbers as comma-separated rows under a fixed header.
std::string render_report_csv(const std::vector<NetOutcome>& outcomes);

}
