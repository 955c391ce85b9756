#include "cwn/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cwn/error.hpp"

namespace cwn {

namespace {

std::string marking_text(const ColoredWorkflowNet& cnet, const ColoredMarking& m) {
	if (m.total() == 0) return "{}";
	std::string out = "{";
	bool first = true;
	for (const auto& [place, values] : m.tokens()) {
		for (const ColorValue& v : values) {
			if (!first) out += ", ";
			first = false;
			out += cnet.net.name(place) + ":" + to_string(v);
		}
	}
	out += "}";
	return out;
}

std::vector<WitnessStep> witness_to(const ColoredWorkflowNet& cnet, const StateGraph& g,
                                    std::size_t state) {
	std::vector<WitnessStep> path;
	while (state != 0) {
		const std::size_t e = g.discovered_by[state];
		if (e == StateGraph::npos) break;  // unreachable by construction
		const StateGraph::Edge& edge = g.edges[e];
		WitnessStep step;
		step.transition = edge.transition;
		step.text = "fire " + cnet.net.name(edge.transition) + " [" +
		            to_string(edge.binding.in) + " -> " + to_string(edge.binding.out) + "]";
		path.push_back(step);
		state = edge.from;
	}
	std::reverse(path.begin(), path.end());
	return path;
}

/// States from which some state satisfying `is_goal` is reachable, via
/// breadth-first search over reversed edges.
std::vector<bool> can_reach(const StateGraph& g, const std::vector<bool>& is_goal) {
	std::vector<bool> hit(g.states.size(), false);
	std::deque<std::size_t> queue;
	for (std::size_t s = 0; s < g.states.size(); ++s)
		if (is_goal[s]) {
			hit[s] = true;
			queue.push_back(s);
		}
	while (!queue.empty()) {
		const std::size_t s = queue.front();
		queue.pop_front();
		for (std::size_t e : g.in_edges[s]) {
			const std::size_t from = g.edges[e].from;
			if (!hit[from]) {
				hit[from] = true;
				queue.push_back(from);
			}
		}
	}
	return hit;
}

}

bool StateGraph::is_single_on(const ColoredMarking& m, NodeId place) {
	return m.total() == 1 && m.count(place) == 1;
}

StateGraph explore(const ColoredWorkflowNet& cnet, const ColoredMarking& initial,
                   const OracleOptions& opts) {
	StateGraph g;
	g.states.push_back(initial);
	g.index.emplace(initial, 0);
	g.out_edges.emplace_back();
	g.in_edges.emplace_back();
	g.discovered_by.push_back(StateGraph::npos);

	std::deque<std::size_t> queue{0};
	while (!queue.empty()) {
		const std::size_t s = queue.front();
		queue.pop_front();
		const ColoredMarking current = g.states[s];  // copy: states may reallocate
		for (NodeId t : cnet.net.transitions()) {
			for (const TransformerPair& binding : enabled_bindings(cnet, current, t)) {
				const ColoredMarking next = fire_colored(cnet, current, t, binding);
				auto [it, inserted] = g.index.emplace(next, g.states.size());
				if (inserted) {
					if (g.states.size() >= opts.state_cap) {
						g.index.erase(it);
						g.capped = true;
						return g;
					}
					g.states.push_back(next);
					g.out_edges.emplace_back();
					g.in_edges.emplace_back();
					g.discovered_by.push_back(g.edges.size());
					queue.push_back(it->second);
				}
				const std::size_t e = g.edges.size();
				g.edges.push_back({s, t, binding, it->second});
				g.out_edges[s].push_back(e);
				g.in_edges[it->second].push_back(e);
			}
		}
	}
	return g;
}

SoundnessReport oracle_is_sound(const ColoredWorkflowNet& cnet, const OracleOptions& opts) {
	SoundnessReport report;
	const NodeId entry = cnet.net.entry();
	const NodeId exit = cnet.net.exit();
	std::set<NodeId> fired;

	for (const ColorValue& v : cnet.color_set(entry).values()) {
		const StateGraph g = explore(cnet, ColoredMarking::single(entry, v), opts);
		report.states_explored += g.states.size();
		if (g.capped) {
			report.capped = true;
			report.reason = "state cap of " + std::to_string(opts.state_cap) +
			                " exceeded while exploring entry color " + to_string(v);
			return report;
		}
		for (const StateGraph::Edge& e : g.edges) fired.insert(e.transition);

		std::vector<bool> is_final(g.states.size(), false);
		for (std::size_t s = 0; s < g.states.size(); ++s)
			is_final[s] = StateGraph::is_single_on(g.states[s], exit);
		const std::vector<bool> ok = can_reach(g, is_final);
		for (std::size_t s = 0; s < g.states.size(); ++s) {
			if (ok[s]) continue;
			report.sound = false;
			report.reason = "from entry color " + to_string(v) + ", marking " +
			                marking_text(cnet, g.states[s]) +
			                " cannot complete to a single exit token";
			report.witness = witness_to(cnet, g, s);
			return report;
		}
	}

	for (NodeId t : cnet.net.transitions()) {
		if (!fired.count(t)) {
			report.sound = false;
			report.reason = "transition '" + cnet.net.name(t) +
			                "' never fires in any run";
			return report;
		}
	}

	report.sound = true;
	return report;
}

SoundnessReport oracle_is_k_sound(const ColoredWorkflowNet& cnet, unsigned k,
                                  const OracleOptions& opts) {
	if (k == 0) throw Error("k-soundness requires k >= 1");
	SoundnessReport report;
	const NodeId entry = cnet.net.entry();
	const NodeId exit = cnet.net.exit();

	for (const ColorValue& v : cnet.color_set(entry).values()) {
		ColoredMarking initial;
		for (unsigned n = 0; n < k; ++n) initial.add(entry, v);
		const StateGraph g = explore(cnet, initial, opts);
		report.states_explored += g.states.size();
		if (g.capped) {
			report.capped = true;
			report.reason = "state cap of " + std::to_string(opts.state_cap) +
			                " exceeded while exploring entry color " + to_string(v);
			return report;
		}

		std::vector<bool> is_final(g.states.size(), false);
		for (std::size_t s = 0; s < g.states.size(); ++s) {
			const ColoredMarking& m = g.states[s];
			is_final[s] = m.total() == k && m.count(exit) == k;
		}
		const std::vector<bool> ok = can_reach(g, is_final);
		for (std::size_t s = 0; s < g.states.size(); ++s) {
			if (ok[s]) continue;
			report.sound = false;
			report.reason = "with " + std::to_string(k) + " tokens of entry color " +
			                to_string(v) + ", marking " + marking_text(cnet, g.states[s]) +
			                " cannot complete to " + std::to_string(k) + " exit tokens";
			report.witness = witness_to(cnet, g, s);
			return report;
		}
	}

	report.sound = true;
	return report;
}

SummaryReport oracle_summary(const ColoredWorkflowNet& cnet, const OracleOptions& opts) {
	SummaryReport report;
	const NodeId entry = cnet.net.entry();
	const NodeId exit = cnet.net.exit();

	for (const ColorValue& v : cnet.color_set(entry).values()) {
		std::set<ColorValue> outs;
		const StateGraph g = explore(cnet, ColoredMarking::single(entry, v), opts);
		report.states_explored += g.states.size();
		if (g.capped) report.capped = true;
		for (const ColoredMarking& m : g.states) {
			if (!StateGraph::is_single_on(m, exit)) continue;
			outs.insert(m.tokens().begin()->second.front());
		}
		report.pairs[v] = std::vector<ColorValue>(outs.begin(), outs.end());
	}
	return report;
}

EquivalenceReport check_equivalence(const ColoredWorkflowNet& a,
                                    const ColoredWorkflowNet& b,
                                    const OracleOptions& opts) {
	EquivalenceReport report;
	if (!(a.color_set(a.net.entry()) == b.color_set(b.net.entry()))) {
		report.detail = "entry color sets differ";
		return report;
	}

	const SoundnessReport sa = oracle_is_sound(a, opts);
	const SoundnessReport sb = oracle_is_sound(b, opts);
	if (sa.capped || sb.capped) {
		report.capped = true;
		report.detail = "state cap exceeded; verdict unavailable";
		return report;
	}
	if (sa.sound != sb.sound) {
		report.detail = std::string("soundness verdicts differ: first net is ") +
		                (sa.sound ? "sound" : "unsound") + ", second is " +
		                (sb.sound ? "sound" : "unsound");
		return report;
	}

	const SummaryReport ra = oracle_summary(a, opts);
	const SummaryReport rb = oracle_summary(b, opts);
	if (ra.capped || rb.capped) {
		report.capped = true;
		report.detail = "state cap exceeded; summary unavailable";
		return report;
	}
	if (!(ra == rb)) {
		for (const auto& [v, outs] : ra.pairs) {
			const auto it = rb.pairs.find(v);
			const std::vector<ColorValue> other =
				it == rb.pairs.end() ? std::vector<ColorValue>{} : it->second;
			if (outs != other) {
				report.detail = "summaries differ for entry color " + to_string(v) +
				                ": {" + to_string(outs) + "} vs {" + to_string(other) + "}";
				return report;
			}
		}
		report.detail = "summaries differ";
		return report;
	}

	report.equivalent = true;
	return report;
}

}
