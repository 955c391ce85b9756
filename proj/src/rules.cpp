#include "cwn/rules.hpp"

#include <algorithm>

#include "cwn/error.hpp"

namespace cwn {

const char* to_string(RuleKind k) {
	switch (k) {
		case RuleKind::Merge: return "merge";
		case RuleKind::Iteration: return "iteration";
		case RuleKind::Shortcut: return "shortcut";
		case RuleKind::DShortcut: return "d-shortcut";
	}
	return "?";
}

void RuleCounts::bump(RuleKind k) {
	switch (k) {
		case RuleKind::Merge: ++merge; break;
		case RuleKind::Iteration: ++iteration; break;
		case RuleKind::Shortcut: ++shortcut; break;
		case RuleKind::DShortcut: ++d_shortcut; break;
	}
}

void ReductionTrace::record(const RuleApplication& app) {
	steps.push_back(app);
	counts.bump(app.kind);
}

namespace {

std::vector<NodeId> sorted(const std::set<NodeId>& s) {
	return std::vector<NodeId>(s.begin(), s.end());
}

void finish(const ColoredWorkflowNet& cnet, RuleApplication& app) {
	app.places_after = cnet.net.places().size();
	app.transitions_after = cnet.net.transitions().size();
	app.clusters_after = ClusterPartition(cnet.net).size();
}

void check_result_valid(const ColoredWorkflowNet& cnet, const char* rule) {
	const std::vector<Violation> v = validate(cnet);
	if (!v.empty())
		throw Error(std::string(rule) + " left the net malformed: " + v.front().message);
}

}

std::optional<std::string> merge_guard_failure(const ColoredWorkflowNet& cnet,
                                               NodeId t1, NodeId t2) {
	const WorkflowNet& net = cnet.net;
	if (!net.is_transition(t1) || !net.is_transition(t2))
		return "merge operands must be transitions";
	if (t1 == t2) return "merge operands must be distinct";
	if (net.preset(t1) != net.preset(t2))
		return "presets of '" + net.name(t1) + "' and '" + net.name(t2) + "' differ";
	if (net.postset(t1) != net.postset(t2))
		return "postsets of '" + net.name(t1) + "' and '" + net.name(t2) + "' differ";
	return std::nullopt;
}

std::optional<std::string> iteration_guard_failure(const ColoredWorkflowNet& cnet, NodeId t) {
	const WorkflowNet& net = cnet.net;
	if (!net.is_transition(t)) return "iteration operand must be a transition";
	if (net.preset(t) != net.postset(t))
		return "'" + net.name(t) + "' is not a self-loop (preset differs from postset)";
	const ClusterPartition parts(net);
	const Cluster& c = parts.cluster_of(t);
	if (!is_free_choice_cluster(net, c))
		return "cluster of '" + net.name(t) + "' is not free choice";
	if (c.transitions.size() < 2)
		return "cluster of '" + net.name(t) + "' has no other transition to absorb the loop";
	return std::nullopt;
}

std::optional<std::string> shortcut_guard_failure(const ColoredWorkflowNet& cnet, NodeId t,
                                                  NodeId cluster_rep, bool direct_only) {
	const WorkflowNet& net = cnet.net;
	if (!net.is_transition(t)) return "shortcut operand must be a transition";
	if (!net.has_node(cluster_rep)) return "shortcut cluster representative does not exist";
	const ClusterPartition parts(net);
	const Cluster& c = parts.cluster_of(cluster_rep);
	if (c.representative != cluster_rep)
		return "node " + net.name(cluster_rep) + " does not represent its cluster";
	if (c.transitions.empty()) return "target cluster has no transitions";
	if (c.contains_place(net.exit())) return "target cluster is the exit cluster";
	if (c.contains_transition(t)) return "transition belongs to the target cluster";
	if (!is_free_choice_cluster(net, c))
		return "target cluster is not free choice";
	if (!unconditionally_enables(net, t, c))
		return "'" + net.name(t) + "' does not unconditionally enable the cluster";
	if (direct_only && c.transitions.size() != 1)
		return "cluster has " + std::to_string(c.transitions.size()) +
		       " transitions (direct variant requires exactly one)";
	// The composed transition assigns one value per output place; a cluster
	// transition writing into a pass-through place would need two.
	const std::set<NodeId>& tpost = net.postset(t);
	for (NodeId u : c.transitions) {
		for (NodeId q : net.postset(u)) {
			if (tpost.count(q) && !net.preset(u).count(q))
				return "pass-through place '" + net.name(q) +
				       "' is also produced by cluster transition '" + net.name(u) + "'";
		}
	}
	return std::nullopt;
}

RuleResult apply_merge(const ColoredWorkflowNet& cnet, NodeId t1, NodeId t2) {
	if (auto why = merge_guard_failure(cnet, t1, t2))
		throw GuardError("merge(" + std::to_string(t1) + "," + std::to_string(t2) +
		                 "): " + *why);
	RuleResult r{cnet, {}};
	WorkflowNet& net = r.net.net;

	const std::vector<NodeId> pre = sorted(net.preset(t1));
	const std::vector<NodeId> post = sorted(net.postset(t1));
	const Transformer merged =
		union_transformers(cnet.transformer(t1), cnet.transformer(t2));

	const NodeId tm = net.add_transition(
		net.fresh_name("(" + net.name(t1) + "+" + net.name(t2) + ")"));
	for (NodeId p : pre) net.add_arc(p, tm);
	for (NodeId p : post) net.add_arc(tm, p);
	r.net.transformers[tm] = merged;

	net.remove_node(t1);
	net.remove_node(t2);
	r.net.transformers.erase(t1);
	r.net.transformers.erase(t2);

	r.app.kind = RuleKind::Merge;
	r.app.operands = {t1, t2};
	r.app.created = {tm};
	r.app.removed = {t1, t2};
	r.app.note = "merge '" + cnet.net.name(t1) + "' and '" + cnet.net.name(t2) + "' into '" +
	             net.name(tm) + "'";
	check_result_valid(r.net, "merge");
	finish(r.net, r.app);
	return r;
}

RuleResult apply_iteration(const ColoredWorkflowNet& cnet, NodeId t) {
	if (auto why = iteration_guard_failure(cnet, t))
		throw GuardError("iteration(" + std::to_string(t) + "): " + *why);
	RuleResult r{cnet, {}};
	WorkflowNet& net = r.net.net;

	const ClusterPartition parts(net);
	const Cluster c = parts.cluster_of(t);
	const Transformer closure =
		star_transformer(cnet.transformer(t), cnet.color_sets_for(c.places));
	for (NodeId u : c.transitions) {
		if (u == t) continue;
		r.net.transformers[u] = compose_transformers(closure, cnet.transformer(u));
	}
	net.remove_node(t);
	r.net.transformers.erase(t);

	r.app.kind = RuleKind::Iteration;
	r.app.operands = {t};
	r.app.removed = {t};
	r.app.note = "iteration removes self-loop '" + cnet.net.name(t) +
	             "' and folds its closure into its cluster companions";
	check_result_valid(r.net, "iteration");
	finish(r.net, r.app);
	return r;
}

RuleResult apply_shortcut(const ColoredWorkflowNet& cnet, NodeId t, NodeId cluster_rep,
                          bool direct_only) {
	if (auto why = shortcut_guard_failure(cnet, t, cluster_rep, direct_only))
		throw GuardError("shortcut(" + std::to_string(t) + "," +
		                 std::to_string(cluster_rep) + "): " + *why);
	RuleResult r{cnet, {}};
	WorkflowNet& net = r.net.net;

	const ClusterPartition parts(net);
	const Cluster c = parts.cluster_of(cluster_rep);
	const std::vector<NodeId> tpre = sorted(net.preset(t));
	const std::set<NodeId>& tpost = net.postset(t);

	for (NodeId u : c.transitions) {
		std::set<NodeId> outs;
		for (NodeId q : tpost)
			if (!net.preset(u).count(q)) outs.insert(q);
		for (NodeId q : net.postset(u)) outs.insert(q);

		const NodeId ts = net.add_transition(
			net.fresh_name("(" + net.name(t) + "." + net.name(u) + ")"));
		for (NodeId p : tpre) net.add_arc(p, ts);
		for (NodeId q : outs) net.add_arc(ts, q);
		r.net.transformers[ts] =
			compose_transformers(cnet.transformer(t), cnet.transformer(u));
		r.app.created.push_back(ts);
	}

	net.remove_node(t);
	r.net.transformers.erase(t);
	r.app.removed.push_back(t);

	// The cluster dies when its places lost their last feeder.
	bool fed = false;
	for (NodeId p : c.places)
		if (!net.preset(p).empty()) {
			fed = true;
			break;
		}
	if (!fed) {
		for (NodeId u : c.transitions) {
			net.remove_node(u);
			r.net.transformers.erase(u);
			r.app.removed.push_back(u);
		}
		for (NodeId p : c.places) {
			net.remove_node(p);
			r.net.colors.erase(p);
			r.app.removed.push_back(p);
		}
	}

	r.app.kind = direct_only ? RuleKind::DShortcut : RuleKind::Shortcut;
	r.app.operands = {t, cluster_rep};
	r.app.note = std::string(direct_only ? "d-shortcut" : "shortcut") + " of '" +
	             cnet.net.name(t) + "' through the cluster of '" + cnet.net.name(cluster_rep) +
	             (fed ? "'" : "', which is then unreachable and removed");
	check_result_valid(r.net, "shortcut");
	finish(r.net, r.app);
	return r;
}

RuleResult apply_candidate(const ColoredWorkflowNet& cnet, const Candidate& c) {
	switch (c.kind) {
		case RuleKind::Merge: return apply_merge(cnet, c.operands.at(0), c.operands.at(1));
		case RuleKind::Iteration: return apply_iteration(cnet, c.operands.at(0));
		case RuleKind::Shortcut:
			return apply_shortcut(cnet, c.operands.at(0), c.operands.at(1), false);
		case RuleKind::DShortcut:
			return apply_shortcut(cnet, c.operands.at(0), c.operands.at(1), true);
	}
	throw Error("unknown rule kind");
}

std::vector<Candidate> enumerate_applicable(const ColoredWorkflowNet& cnet, RuleKind kind) {
	const WorkflowNet& net = cnet.net;
	std::vector<Candidate> out;
	switch (kind) {
		case RuleKind::Merge: {
			const std::vector<NodeId> ts = sorted(net.transitions());
			for (std::size_t i = 0; i < ts.size(); ++i)
				for (std::size_t j = i + 1; j < ts.size(); ++j)
					if (!merge_guard_failure(cnet, ts[i], ts[j]))
						out.push_back({kind, {ts[i], ts[j]}});
			break;
		}
		case RuleKind::Iteration: {
			for (NodeId t : net.transitions())
				if (!iteration_guard_failure(cnet, t)) out.push_back({kind, {t}});
			break;
		}
		case RuleKind::Shortcut:
		case RuleKind::DShortcut: {
			const bool direct = kind == RuleKind::DShortcut;
			const ClusterPartition parts(net);
			for (NodeId t : net.transitions())
				for (const Cluster& c : parts.clusters())
					if (!shortcut_guard_failure(cnet, t, c.representative, direct))
						out.push_back({kind, {t, c.representative}});
			break;
		}
	}
	std::sort(out.begin(), out.end());
	return out;
}

}
