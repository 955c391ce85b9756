#include "cwn/reduction.hpp"

#include <algorithm>
#include <deque>

#include "cwn/error.hpp"

namespace cwn {

const char* to_string(Verdict v) {
	switch (v) {
		case Verdict::CompletelyReduced: return "completely-reduced";
		case Verdict::Unsound: return "unsound";
		case Verdict::Irreducible: return "irreducible";
		case Verdict::Malformed: return "malformed";
	}
	return "?";
}

namespace {

/// Marked places obtained by propagating outputs from one cluster: outputs
/// landing in free-choice clusters are marked, and a fully marked cluster
/// propagates its own transitions' outputs in turn.
std::set<NodeId> propagate_marks(const WorkflowNet& net, const ClusterPartition& parts,
                                 std::size_t anchor_index) {
	std::set<NodeId> marked;
	std::vector<bool> done(parts.size(), false);
	std::deque<std::size_t> queue{anchor_index};
	while (!queue.empty()) {
		const std::size_t ci = queue.front();
		queue.pop_front();
		if (done[ci]) continue;
		done[ci] = true;
		for (NodeId t : parts.clusters()[ci].transitions) {
			for (NodeId p : net.postset(t)) {
				const std::size_t pi = parts.index_of(p);
				const Cluster& pc = parts.clusters()[pi];
				if (!is_free_choice_cluster(net, pc)) continue;
				if (!marked.insert(p).second) continue;
				if (done[pi]) continue;
				const bool full = std::all_of(pc.places.begin(), pc.places.end(),
				                              [&](NodeId q) { return marked.count(q); });
				if (full) queue.push_back(pi);
			}
		}
	}
	return marked;
}

bool cluster_fully_marked(const Cluster& c, const std::set<NodeId>& marked) {
	return std::all_of(c.places.begin(), c.places.end(),
	                   [&](NodeId p) { return marked.count(p) > 0; });
}

bool is_potential(const WorkflowNet& net, const ClusterPartition& parts, std::size_t ci) {
	const std::set<NodeId> marked = propagate_marks(net, parts, ci);
	return cluster_fully_marked(parts.clusters()[ci], marked);
}

bool subset(const std::set<NodeId>& a, const std::set<NodeId>& b) {
	return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Cycle check restricted to the fragment's own nodes and arcs.
bool is_fragment_cyclic(const WorkflowNet& net, const Fragment& f) {
	std::vector<NodeId> nodes = f.nodes();
	std::map<NodeId, int> color;  // 0 fresh, 1 on stack, 2 done
	for (NodeId start : nodes) {
		if (color[start]) continue;
		std::vector<std::pair<NodeId, bool>> stack{{start, false}};
		while (!stack.empty()) {
			auto [n, expanded] = stack.back();
			stack.pop_back();
			if (expanded) {
				color[n] = 2;
				continue;
			}
			if (color[n] == 1) continue;
			color[n] = 1;
			stack.push_back({n, true});
			for (NodeId m : net.postset(n)) {
				if (!f.contains(m)) continue;
				if (color[m] == 1) return true;
				if (color[m] == 0) stack.push_back({m, false});
			}
		}
	}
	return false;
}

}

std::vector<NodeId> find_potential_synchronizers(const WorkflowNet& net) {
	const ClusterPartition parts(net);
	std::vector<NodeId> reps;
	for (std::size_t ci = 0; ci < parts.size(); ++ci)
		if (is_potential(net, parts, ci))
			reps.push_back(parts.clusters()[ci].representative);
	return reps;  // ascending: clusters are ordered by representative
}

std::vector<NodeId> Fragment::nodes() const {
	std::vector<NodeId> out(places.begin(), places.end());
	out.insert(out.end(), transitions.begin(), transitions.end());
	std::sort(out.begin(), out.end());
	return out;
}

Fragment compute_fragment(const WorkflowNet& net, NodeId anchor_rep) {
	const ClusterPartition parts(net);
	const Cluster& anchor = parts.cluster_of(anchor_rep);
	Fragment f;
	f.anchor = anchor.representative;
	f.places.insert(anchor.places.begin(), anchor.places.end());

	const std::set<NodeId> marked =
		propagate_marks(net, parts, parts.index_of(anchor_rep));
	if (!cluster_fully_marked(anchor, marked)) {
		f.malformed = true;
		f.malformed_reason = "anchor cluster is not a potential synchronizer";
		return f;
	}

	// Grow backwards: take a transition once everything it produces lies in
	// the fragment, provided the anchor's flow reaches everything it consumes.
	bool changed = true;
	while (changed) {
		changed = false;
		for (NodeId t : net.transitions()) {
			if (f.transitions.count(t)) continue;
			if (!subset(net.postset(t), f.places)) continue;
			if (!subset(net.preset(t), marked)) continue;
			f.transitions.insert(t);
			f.places.insert(net.preset(t).begin(), net.preset(t).end());
			changed = true;
		}
	}

	// Boundary audit. Transitions outside the fragment may feed it freely,
	// but consuming from it is only well formed for a clean exit: the whole
	// preset inside, the whole postset outside, and an exit cluster that is
	// itself a potential synchronizer.
	for (NodeId t : net.transitions()) {
		if (f.transitions.count(t)) continue;
		const std::set<NodeId>& pre = net.preset(t);
		std::size_t inside = 0;
		for (NodeId p : pre) inside += f.places.count(p);
		if (inside == 0) continue;
		if (inside != pre.size()) {
			f.malformed = true;
			f.malformed_reason = "transition '" + net.name(t) +
			                     "' consumes only part of its inputs from the fragment";
			return f;
		}
		for (NodeId q : net.postset(t)) {
			if (f.places.count(q)) {
				f.malformed = true;
				f.malformed_reason = "exit transition '" + net.name(t) +
				                     "' ends partly inside the fragment";
				return f;
			}
		}
		const std::size_t ci = parts.index_of(t);
		if (!is_potential(net, parts, ci)) {
			f.malformed = true;
			f.malformed_reason = "exit transition '" + net.name(t) +
			                     "' leaves through a cluster that cannot synchronize";
			return f;
		}
	}
	return f;
}

std::vector<Fragment> candidate_fragments(const WorkflowNet& net) {
	std::vector<Fragment> out;
	for (NodeId rep : find_potential_synchronizers(net))
		out.push_back(compute_fragment(net, rep));
	std::stable_sort(out.begin(), out.end(), [](const Fragment& a, const Fragment& b) {
		if (a.size() != b.size()) return a.size() < b.size();
		return a.anchor < b.anchor;
	});
	return out;
}

std::optional<Fragment> select_minimal_fragment(const WorkflowNet& net) {
	for (Fragment& f : candidate_fragments(net))
		if (!f.malformed) return std::move(f);
	return std::nullopt;
}

namespace {

class Engine {
public:
	Engine(const ColoredWorkflowNet& input, const ReduceOptions& opts)
	    : work_(input), opts_(opts) {
		original_fc_ = is_free_choice_net(input.net);
		const unsigned long long c0 = ClusterPartition(input.net).size();
		const unsigned long long t0 = input.net.transitions().size();
		const unsigned long long scale = opts.budget_scale ? opts.budget_scale : 1;
		// Polynomial ceilings with slack; a correct run on a reducible net
		// stays far below them, so tripping one means the engine is looping.
		merge_budget_ = scale * (c0 * c0 * c0 * c0 + c0 * c0 * t0 + 64);
		shortcut_budget_ = scale * (c0 * c0 * c0 * c0 * t0 + c0 * c0 + 64);
		total_budget_ = merge_budget_ + shortcut_budget_ * (t0 + 4) + t0 + 1024;
	}

	ReduceOutcome run(bool acyclic_only) {
		if (!acyclic_only) {
			main_loop();
		} else if (!is_acyclic(work_.net)) {
			fail("net is cyclic; the acyclic completion alone cannot reduce it");
		}
		if (!finished_) {
			if (opts_.keep_snapshots)
				snapshot(std::string(kSnapAcyclicStart), kNoNode, {}, out_.snapshots);
			acyclic_loop();
		}
		out_.net = std::move(work_);
		return std::move(out_);
	}

private:
	void fail(const std::string& detail) {
		out_.verdict = Verdict::Malformed;
		out_.detail = detail;
		finished_ = true;
	}

	void snapshot(std::string label, NodeId anchor, std::vector<NodeId> nodes,
	              std::vector<PhaseSnapshot>& into) {
		PhaseSnapshot s;
		s.label = std::move(label);
		s.anchor = anchor;
		s.fragment_nodes = std::move(nodes);
		s.net = work_;
		into.push_back(std::move(s));
	}

	/// Applies one candidate, records it, and enforces the per-rule progress
	/// invariants and the global budgets. False means the engine failed.
	bool apply(const Candidate& c) {
		const std::size_t t_before = work_.net.transitions().size();
		const std::size_t arcs_before = work_.net.arc_count();
		RuleResult r;
		try {
			r = apply_candidate(work_, c);
		} catch (const std::exception& ex) {
			fail(std::string("rule application failed: ") + ex.what());
			return false;
		}
		work_ = std::move(r.net);
		out_.trace.record(r.app);

		const std::size_t t_after = work_.net.transitions().size();
		if ((c.kind == RuleKind::Merge || c.kind == RuleKind::Iteration) &&
		    t_after + 1 != t_before) {
			fail(std::string(to_string(c.kind)) + " did not shrink the transition count");
			return false;
		}
		if (c.kind == RuleKind::DShortcut && work_.net.arc_count() > arcs_before) {
			fail("direct shortcut increased the arc count");
			return false;
		}
		const RuleCounts& n = out_.trace.counts;
		if (n.merge > merge_budget_ || n.shortcut_total() > shortcut_budget_ ||
		    n.total() > total_budget_) {
			fail("rule budget exceeded; the reduction is not converging");
			return false;
		}
		return true;
	}

	std::optional<Candidate> fragment_merge(const Fragment& f) {
		for (const Candidate& c : enumerate_applicable(work_, RuleKind::Merge))
			if (f.transitions.count(c.operands[0]) && f.transitions.count(c.operands[1]))
				return c;
		return std::nullopt;
	}

	std::optional<Candidate> fragment_iteration(const Fragment& f) {
		for (const Candidate& c : enumerate_applicable(work_, RuleKind::Iteration))
			if (f.transitions.count(c.operands[0])) return c;
		return std::nullopt;
	}

	/// Phase 1 step: a direct shortcut from a fragment transition into a
	/// fragment cluster that is not a potential synchronizer.
	std::optional<Candidate> phase1_shortcut(const Fragment& f,
	                                         const std::set<NodeId>& syncs) {
		const ClusterPartition parts(work_.net);
		for (const Candidate& c : enumerate_applicable(work_, RuleKind::DShortcut)) {
			if (!f.transitions.count(c.operands[0])) continue;
			const NodeId rep = c.operands[1];
			if (syncs.count(rep)) continue;
			const Cluster& target = parts.cluster_of(rep);
			if (!std::all_of(target.places.begin(), target.places.end(),
			                 [&](NodeId p) { return f.places.count(p) > 0; }))
				continue;
			return c;
		}
		return std::nullopt;
	}

	/// Phase 2 step: a full shortcut from a fragment transition into a
	/// fragment cluster, nearest target cluster first.
	std::optional<Candidate> phase2_shortcut(const Fragment& f) {
		const ClusterPartition parts(work_.net);
		std::optional<Candidate> best;
		for (const Candidate& c : enumerate_applicable(work_, RuleKind::Shortcut)) {
			if (!f.transitions.count(c.operands[0])) continue;
			const Cluster& target = parts.cluster_of(c.operands[1]);
			if (!std::all_of(target.places.begin(), target.places.end(),
			                 [&](NodeId p) { return f.places.count(p) > 0; }))
				continue;
			const bool better =
				!best || c.operands[1] < best->operands[1] ||
				(c.operands[1] == best->operands[1] && c.operands[0] < best->operands[0]);
			if (better) best = c;
		}
		return best;
	}

	/// Works on one candidate fragment until it is gone, quiet, or the rules
	/// dry up. Returns the number of rules applied.
	std::size_t run_candidate(NodeId anchor, std::vector<PhaseSnapshot>& pending) {
		std::size_t applied = 0;
		int phase = 1;
		while (!finished_) {
			if (!work_.net.has_node(anchor)) break;
			const std::vector<NodeId> sync_list = find_potential_synchronizers(work_.net);
			if (!std::binary_search(sync_list.begin(), sync_list.end(), anchor)) break;
			const Fragment f = compute_fragment(work_.net, anchor);
			if (f.malformed) {
				diagnostics_.push_back("fragment at '" + work_.net.name(anchor) +
				                       "': " + f.malformed_reason);
				break;
			}
			const std::set<NodeId> syncs(sync_list.begin(), sync_list.end());

			if (phase == 1) {
				const ClusterPartition parts(work_.net);
				const bool has_nonsync = std::any_of(
					f.transitions.begin(), f.transitions.end(), [&](NodeId t) {
						return syncs.count(parts.cluster_of(t).representative) == 0;
					});
				if (!has_nonsync) {
					if (opts_.keep_snapshots)
						snapshot(std::string(kSnapFragmentSyncOnly), anchor, f.nodes(),
						         pending);
					phase = 2;
					continue;
				}
				std::optional<Candidate> c = fragment_merge(f);
				if (!c) c = fragment_iteration(f);
				if (!c) c = phase1_shortcut(f, syncs);
				if (c) {
					if (!apply(*c)) return applied;
					++applied;
					continue;
				}
				phase = 2;  // cannot drain further; try to break cycles anyway
				continue;
			}

			if (!is_fragment_cyclic(work_.net, f)) break;
			std::optional<Candidate> c = fragment_merge(f);
			if (!c) c = fragment_iteration(f);
			if (!c) c = phase2_shortcut(f);
			if (!c) break;
			if (!apply(*c)) return applied;
			++applied;
		}
		return applied;
	}

	void main_loop() {
		while (!finished_ && !is_acyclic(work_.net)) {
			diagnostics_.clear();
			const std::vector<Fragment> candidates = candidate_fragments(work_.net);
			if (candidates.empty())
				diagnostics_.push_back("cyclic net has no potential synchronizer cluster");
			bool progressed = false;
			for (const Fragment& f : candidates) {
				if (f.malformed) {
					diagnostics_.push_back("fragment at '" + work_.net.name(f.anchor) +
					                       "': " + f.malformed_reason);
					continue;
				}
				std::vector<PhaseSnapshot> pending;
				if (opts_.keep_snapshots)
					snapshot(std::string(kSnapFragmentSelected), f.anchor, f.nodes(),
					         pending);
				const std::size_t applied = run_candidate(f.anchor, pending);
				if (finished_) return;
				if (applied > 0) {
					for (PhaseSnapshot& s : pending)
						out_.snapshots.push_back(std::move(s));
					progressed = true;
					break;
				}
				diagnostics_.push_back("fragment at '" + work_.net.name(f.anchor) +
				                       "' admits no rule application");
			}
			if (!progressed) {
				stuck("cyclic net cannot be reduced further");
				return;
			}
		}
	}

	void acyclic_loop() {
		while (!finished_) {
			std::vector<Candidate> merges = enumerate_applicable(work_, RuleKind::Merge);
			while (!merges.empty()) {
				if (!apply(merges.front())) return;
				merges = enumerate_applicable(work_, RuleKind::Merge);
			}
			if (is_done_shape()) {
				out_.verdict = Verdict::CompletelyReduced;
				out_.summary = work_.transformer(*work_.net.transitions().begin());
				finished_ = true;
				return;
			}
			const std::vector<Candidate> ds =
				enumerate_applicable(work_, RuleKind::DShortcut);
			if (ds.empty()) {
				stuck("acyclic net is not in single-transition form and admits "
				      "no merge or direct shortcut");
				return;
			}
			if (!apply(ds.front())) return;
		}
	}

	bool is_done_shape() const {
		const WorkflowNet& net = work_.net;
		if (net.places().size() != 2 || net.transitions().size() != 1) return false;
		if (!net.places().count(net.entry()) || !net.places().count(net.exit()))
			return false;
		const NodeId t = *net.transitions().begin();
		return net.preset(t) == std::set<NodeId>{net.entry()} &&
		       net.postset(t) == std::set<NodeId>{net.exit()};
	}

	void stuck(const std::string& headline) {
		std::string why = headline;
		for (const std::string& d : diagnostics_) why += "; " + d;
		const bool now_fc = is_free_choice_net(work_.net);
		if (original_fc_ && now_fc) {
			out_.verdict = Verdict::Unsound;
			out_.detail = why;
		} else if (original_fc_) {
			fail("free choice was lost during reduction: " + why);
			return;
		} else {
			out_.verdict = Verdict::Irreducible;
			out_.detail = "net is not free choice; " + why;
		}
		finished_ = true;
	}

	ColoredWorkflowNet work_;
	ReduceOptions opts_;
	ReduceOutcome out_;
	std::vector<std::string> diagnostics_;
	bool original_fc_ = false;
	bool finished_ = false;
	unsigned long long merge_budget_ = 0;
	unsigned long long shortcut_budget_ = 0;
	unsigned long long total_budget_ = 0;
};

ReduceOutcome run_engine(const ColoredWorkflowNet& input, const ReduceOptions& opts,
                         bool acyclic_only) {
	const std::vector<Violation> violations = validate(input);
	if (!violations.empty()) {
		ReduceOutcome out;
		out.verdict = Verdict::Malformed;
		out.net = input;
		out.detail = "invalid input net";
		for (const Violation& v : violations) out.detail += "; " + v.message;
		return out;
	}
	return Engine(input, opts).run(acyclic_only);
}

}

ReduceOutcome reduce(const ColoredWorkflowNet& input, const ReduceOptions& opts) {
	return run_engine(input, opts, false);
}

ReduceOutcome reduce_acyclic(const ColoredWorkflowNet& input, const ReduceOptions& opts) {
	return run_engine(input, opts, true);
}

}
