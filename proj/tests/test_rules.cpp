#include "doctest.h"

#include <random>
#include <string>

#include "cwn/error.hpp"
#include "cwn/oracle.hpp"
#include "cwn/rules.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

using namespace cwn;
using cwn::testing::iv;

namespace {

NodeId id_of(const ColoredWorkflowNet& cnet, const std::string& name) {
	auto id = cnet.net.find(name);
	REQUIRE(id.has_value());
	return *id;
}

void color_unit(ColoredWorkflowNet& cnet) {
	for (NodeId p : cnet.net.places()) cnet.colors[p] = ColorSet::unit();
	for (NodeId t : cnet.net.transitions()) {
		const auto& pre = cnet.net.preset(t);
		const auto& post = cnet.net.postset(t);
		TransformerPair unit;
		unit.in.assign(pre.size(), unit_value());
		unit.out.assign(post.size(), unit_value());
		cnet.transformers[t] =
			Transformer(std::vector<NodeId>(pre.begin(), pre.end()),
			            std::vector<NodeId>(post.begin(), post.end()), {unit});
	}
}

/// i -> a -> p -> {t1|t2} -> q -> b -> o, all unit.
ColoredWorkflowNet twin_net() {
	ColoredWorkflowNet cnet;
	const NodeId i = cnet.net.add_place("i");
	const NodeId p = cnet.net.add_place("p");
	const NodeId q = cnet.net.add_place("q");
	const NodeId o = cnet.net.add_place("o");
	const NodeId a = cnet.net.add_transition("a");
	const NodeId t1 = cnet.net.add_transition("t1");
	const NodeId t2 = cnet.net.add_transition("t2");
	const NodeId b = cnet.net.add_transition("b");
	cnet.net.add_arc(i, a);
	cnet.net.add_arc(a, p);
	cnet.net.add_arc(p, t1);
	cnet.net.add_arc(p, t2);
	cnet.net.add_arc(t1, q);
	cnet.net.add_arc(t2, q);
	cnet.net.add_arc(q, b);
	cnet.net.add_arc(b, o);
	cnet.net.set_entry(i);
	cnet.net.set_exit(o);
	color_unit(cnet);
	return cnet;
}

/// i -> a -> p, self-loop L on p, u: p -> q, b: q -> o. p colored {1,2,3}.
ColoredWorkflowNet loop_net() {
	ColoredWorkflowNet cnet;
	const NodeId i = cnet.net.add_place("i");
	const NodeId p = cnet.net.add_place("p");
	const NodeId q = cnet.net.add_place("q");
	const NodeId o = cnet.net.add_place("o");
	const NodeId a = cnet.net.add_transition("a");
	const NodeId loop = cnet.net.add_transition("L");
	const NodeId u = cnet.net.add_transition("u");
	const NodeId b = cnet.net.add_transition("b");
	cnet.net.add_arc(i, a);
	cnet.net.add_arc(a, p);
	cnet.net.add_arc(p, loop);
	cnet.net.add_arc(loop, p);
	cnet.net.add_arc(p, u);
	cnet.net.add_arc(u, q);
	cnet.net.add_arc(q, b);
	cnet.net.add_arc(b, o);
	cnet.net.set_entry(i);
	cnet.net.set_exit(o);
	cnet.colors[i] = ColorSet::unit();
	cnet.colors[p] = ColorSet({iv(1), iv(2), iv(3)});
	cnet.colors[q] = ColorSet::unit();
	cnet.colors[o] = ColorSet::unit();
	cnet.transformers[a] =
		Transformer({i}, {p}, {TransformerPair{{unit_value()}, {iv(1)}}});
	cnet.transformers[loop] = Transformer({p}, {p}, {TransformerPair{{iv(1)}, {iv(2)}}});
	cnet.transformers[u] = Transformer({p}, {q}, {TransformerPair{{iv(2)}, {unit_value()}}});
	cnet.transformers[b] =
		Transformer({q}, {o}, {TransformerPair{{unit_value()}, {unit_value()}}});
	return cnet;
}

/// i -> a -> m -> b -> o plus c: m -> m, with m colored {1,2}.
ColoredWorkflowNet mid_loop_net() {
	ColoredWorkflowNet cnet;
	const NodeId i = cnet.net.add_place("i");
	const NodeId m = cnet.net.add_place("m");
	const NodeId o = cnet.net.add_place("o");
	const NodeId a = cnet.net.add_transition("a");
	const NodeId b = cnet.net.add_transition("b");
	const NodeId c = cnet.net.add_transition("c");
	cnet.net.add_arc(i, a);
	cnet.net.add_arc(a, m);
	cnet.net.add_arc(m, b);
	cnet.net.add_arc(b, o);
	cnet.net.add_arc(m, c);
	cnet.net.add_arc(c, m);
	cnet.net.set_entry(i);
	cnet.net.set_exit(o);
	cnet.colors[i] = ColorSet::unit();
	cnet.colors[m] = ColorSet({iv(1), iv(2)});
	cnet.colors[o] = ColorSet::unit();
	cnet.transformers[a] =
		Transformer({i}, {m}, {TransformerPair{{unit_value()}, {iv(1)}}});
	cnet.transformers[b] =
		Transformer({m}, {o}, {TransformerPair{{iv(2)}, {unit_value()}}});
	cnet.transformers[c] = Transformer({m}, {m}, {TransformerPair{{iv(1)}, {iv(2)}}});
	return cnet;
}

/// One parallel split whose halves both end on o: a: i -> {p,q}, b: p -> o,
/// c: q -> o. Unsound, and the guard on composed outputs bites here.
ColoredWorkflowNet double_token_net() {
	ColoredWorkflowNet cnet;
	const NodeId i = cnet.net.add_place("i");
	const NodeId p = cnet.net.add_place("p");
	const NodeId q = cnet.net.add_place("q");
	const NodeId o = cnet.net.add_place("o");
	const NodeId a = cnet.net.add_transition("a");
	const NodeId b = cnet.net.add_transition("b");
	const NodeId c = cnet.net.add_transition("c");
	cnet.net.add_arc(i, a);
	cnet.net.add_arc(a, p);
	cnet.net.add_arc(a, q);
	cnet.net.add_arc(p, b);
	cnet.net.add_arc(b, o);
	cnet.net.add_arc(q, c);
	cnet.net.add_arc(c, o);
	cnet.net.set_entry(i);
	cnet.net.set_exit(o);
	color_unit(cnet);
	return cnet;
}

}

TEST_CASE("rule kinds render") {
	CHECK(std::string(to_string(RuleKind::Merge)) == "merge");
	CHECK(std::string(to_string(RuleKind::Iteration)) == "iteration");
	CHECK(std::string(to_string(RuleKind::Shortcut)) == "shortcut");
	CHECK(std::string(to_string(RuleKind::DShortcut)) == "d-shortcut");
}

TEST_CASE("merge guard reasons") {
	const ColoredWorkflowNet cnet = twin_net();
	const NodeId a = id_of(cnet, "a");
	const NodeId t1 = id_of(cnet, "t1");
	const NodeId t2 = id_of(cnet, "t2");
	const NodeId p = id_of(cnet, "p");

	CHECK(!merge_guard_failure(cnet, t1, t2).has_value());
	CHECK(merge_guard_failure(cnet, p, t2).value().find("must be transitions") !=
	      std::string::npos);
	CHECK(merge_guard_failure(cnet, t1, t1).value().find("distinct") != std::string::npos);
	CHECK(merge_guard_failure(cnet, a, t1).value().find("presets") != std::string::npos);

	ColoredWorkflowNet widened = twin_net();
	widened.net.add_arc(id_of(widened, "t2"), id_of(widened, "o"));
	CHECK(merge_guard_failure(widened, id_of(widened, "t1"), id_of(widened, "t2"))
	          .value()
	          .find("postsets") != std::string::npos);
	CHECK_THROWS_AS(apply_merge(cnet, t1, t1), GuardError);
}

TEST_CASE("merge folds the twin transitions into one") {
	ColoredWorkflowNet cnet = twin_net();
	const NodeId t1 = id_of(cnet, "t1");
	const NodeId t2 = id_of(cnet, "t2");
	const NodeId p = id_of(cnet, "p");
	const NodeId q = id_of(cnet, "q");

	// Give the twins distinct relations so the union is observable.
	cnet.colors[q] = ColorSet({iv(1), iv(2)});
	cnet.transformers[t1] = Transformer({p}, {q}, {TransformerPair{{unit_value()}, {iv(1)}}});
	cnet.transformers[t2] = Transformer({p}, {q}, {TransformerPair{{unit_value()}, {iv(2)}}});
	cnet.transformers[id_of(cnet, "b")] =
		Transformer({q}, {id_of(cnet, "o")},
	                {TransformerPair{{iv(1)}, {unit_value()}},
	                 TransformerPair{{iv(2)}, {unit_value()}}});

	const RuleResult r = apply_merge(cnet, t1, t2);
	CHECK(r.app.kind == RuleKind::Merge);
	CHECK(r.app.operands == std::vector<NodeId>{t1, t2});
	CHECK(r.app.removed == std::vector<NodeId>{t1, t2});
	REQUIRE(r.app.created.size() == 1);
	const NodeId tm = r.app.created.front();
	CHECK(r.net.net.name(tm) == "(t1+t2)");
	CHECK(!r.net.net.has_node(t1));
	CHECK(r.net.net.preset(tm) == std::set<NodeId>{p});
	CHECK(r.net.net.postset(tm) == std::set<NodeId>{q});
	CHECK(r.net.transformer(tm).size() == 2);
	CHECK(r.app.transitions_after == 3);
	CHECK(r.app.places_after == 4);
	CHECK(r.app.note.find("merge") != std::string::npos);
	CHECK(validate(r.net).empty());
}

TEST_CASE("iteration guard reasons") {
	const ColoredWorkflowNet cnet = loop_net();
	CHECK(!iteration_guard_failure(cnet, id_of(cnet, "L")).has_value());
	CHECK(iteration_guard_failure(cnet, id_of(cnet, "p")).value().find("transition") !=
	      std::string::npos);
	CHECK(iteration_guard_failure(cnet, id_of(cnet, "a")).value().find("self-loop") !=
	      std::string::npos);

	// A lone self-loop has nobody to inherit its closure.
	ColoredWorkflowNet lone = loop_net();
	lone.net.remove_arc(id_of(lone, "p"), id_of(lone, "u"));
	lone.net.add_arc(id_of(lone, "q"), id_of(lone, "u"));
	lone.net.add_arc(id_of(lone, "a"), id_of(lone, "q"));
	lone.transformers[id_of(lone, "a")] =
		Transformer({id_of(lone, "i")}, {id_of(lone, "p"), id_of(lone, "q")},
	                {TransformerPair{{unit_value()}, {iv(1), unit_value()}}});
	lone.transformers[id_of(lone, "u")] =
		Transformer({id_of(lone, "q")}, {id_of(lone, "q")}, {});
	(void)lone;  // shape only; the guard below inspects the cluster
	CHECK(iteration_guard_failure(lone, id_of(lone, "L"))
	          .value()
	          .find("no other transition") != std::string::npos);
}

TEST_CASE("iteration folds the closure into the companions") {
	const ColoredWorkflowNet cnet = loop_net();
	const NodeId loop = id_of(cnet, "L");
	const NodeId u = id_of(cnet, "u");

	const RuleResult r = apply_iteration(cnet, loop);
	CHECK(r.app.kind == RuleKind::Iteration);
	CHECK(r.app.removed == std::vector<NodeId>{loop});
	CHECK(r.app.created.empty());
	CHECK(!r.net.net.has_node(loop));
	CHECK(r.app.note.find("iteration") != std::string::npos);

	// u now fires for 1 (via the loop) and for 2 (directly), never for 3.
	const Transformer& folded = r.net.transformer(u);
	CHECK(folded.size() == 2);
	CHECK(folded.contains(TransformerPair{{iv(1)}, {unit_value()}}));
	CHECK(folded.contains(TransformerPair{{iv(2)}, {unit_value()}}));
	CHECK(validate(r.net).empty());
}

TEST_CASE("shortcut guard reasons") {
	const ColoredWorkflowNet cnet = mid_loop_net();
	const NodeId a = id_of(cnet, "a");
	const NodeId b = id_of(cnet, "b");
	const NodeId m = id_of(cnet, "m");
	const NodeId o = id_of(cnet, "o");

	CHECK(!shortcut_guard_failure(cnet, a, m, false).has_value());
	CHECK(shortcut_guard_failure(cnet, m, m, false).value().find("must be a transition") !=
	      std::string::npos);
	CHECK(shortcut_guard_failure(cnet, a, 77, false).value().find("does not exist") !=
	      std::string::npos);
	CHECK(shortcut_guard_failure(cnet, a, b, false).value().find("does not represent") !=
	      std::string::npos);
	CHECK(shortcut_guard_failure(cnet, a, o, false).value().find("exit cluster") !=
	      std::string::npos);
	CHECK(shortcut_guard_failure(cnet, b, m, false).value().find("belongs to the target") !=
	      std::string::npos);
	CHECK(shortcut_guard_failure(cnet, b, id_of(cnet, "i"), false)
	          .value()
	          .find("unconditionally") != std::string::npos);
	CHECK(shortcut_guard_failure(cnet, a, m, true).value().find("2 transitions") !=
	      std::string::npos);

	// Composed output would land twice on o: a -> {p,q} with b: p -> o.
	const ColoredWorkflowNet dbl = double_token_net();
	CHECK(shortcut_guard_failure(dbl, id_of(dbl, "a"), id_of(dbl, "q"), true)
	          .value()
	          .find("pass-through") != std::string::npos);

	// Non free choice target cluster.
	ColoredWorkflowNet nfc = double_token_net();
	nfc.net.add_arc(id_of(nfc, "q"), id_of(nfc, "b"));
	CHECK(shortcut_guard_failure(nfc, id_of(nfc, "a"), id_of(nfc, "p"), false)
	          .value()
	          .find("not free choice") != std::string::npos);
}

TEST_CASE("shortcut through a live cluster keeps it") {
	const ColoredWorkflowNet cnet = mid_loop_net();
	const NodeId a = id_of(cnet, "a");
	const NodeId m = id_of(cnet, "m");
	const NodeId i = id_of(cnet, "i");
	const NodeId o = id_of(cnet, "o");

	const RuleResult r = apply_shortcut(cnet, a, m, false);
	CHECK(r.app.kind == RuleKind::Shortcut);
	CHECK(r.app.operands == std::vector<NodeId>{a, m});
	CHECK(r.app.removed == std::vector<NodeId>{a});
	REQUIRE(r.app.created.size() == 2);  // one sibling per cluster transition

	// (a.b): i -> o realizes nothing (a yields 1, b needs 2).
	// (a.c): i -> m carries 1 -> 2.
	const auto ab = r.net.net.find("(a.b)");
	const auto ac = r.net.net.find("(a.c)");
	REQUIRE(ab.has_value());
	REQUIRE(ac.has_value());
	CHECK(r.net.net.preset(*ab) == std::set<NodeId>{i});
	CHECK(r.net.net.postset(*ab) == std::set<NodeId>{o});
	CHECK(r.net.transformer(*ab).size() == 0);
	CHECK(r.net.net.postset(*ac) == std::set<NodeId>{m});
	CHECK(r.net.transformer(*ac).contains(TransformerPair{{unit_value()}, {iv(2)}}));

	// m is still fed by c, so the cluster survives.
	CHECK(r.net.net.has_node(m));
	CHECK(validate(r.net).empty());
	CHECK(r.app.note.find("shortcut") != std::string::npos);
}

TEST_CASE("direct shortcut sweeps an unfed cluster away") {
	ColoredWorkflowNet cnet = mid_loop_net();
	cnet.net.remove_node(id_of(cnet, "c"));
	cnet.transformers.erase(id_of(cnet, "c"));
	cnet.transformers[id_of(cnet, "b")] =
		Transformer({id_of(cnet, "m")}, {id_of(cnet, "o")},
	                {TransformerPair{{iv(1)}, {unit_value()}}});
	const NodeId a = id_of(cnet, "a");
	const NodeId b = id_of(cnet, "b");
	const NodeId m = id_of(cnet, "m");

	const RuleResult r = apply_shortcut(cnet, a, m, true);
	CHECK(r.app.kind == RuleKind::DShortcut);
	CHECK(r.app.removed == std::vector<NodeId>{a, b, m});
	REQUIRE(r.app.created.size() == 1);
	const NodeId ab = r.app.created.front();
	CHECK(r.net.net.places().size() == 2);
	CHECK(r.net.net.transitions().size() == 1);
	CHECK(r.net.transformer(ab).contains(
		TransformerPair{{unit_value()}, {unit_value()}}));
	CHECK(r.app.note.find("unreachable") != std::string::npos);
	CHECK(validate(r.net).empty());
}

TEST_CASE("apply_candidate dispatches by kind") {
	const ColoredWorkflowNet cnet = twin_net();
	const Candidate c{RuleKind::Merge, {id_of(cnet, "t1"), id_of(cnet, "t2")}};
	const RuleResult r = apply_candidate(cnet, c);
	CHECK(r.app.kind == RuleKind::Merge);
	CHECK_THROWS_AS(
		apply_candidate(cnet, Candidate{RuleKind::Iteration, {id_of(cnet, "a")}}),
		GuardError);
}

TEST_CASE("rule counts and traces") {
	RuleCounts counts;
	counts.bump(RuleKind::Merge);
	counts.bump(RuleKind::Shortcut);
	counts.bump(RuleKind::DShortcut);
	counts.bump(RuleKind::DShortcut);
	CHECK(counts.total() == 4);
	CHECK(counts.shortcut_total() == 3);

	ReductionTrace trace;
	RuleApplication app;
	app.kind = RuleKind::Iteration;
	trace.record(app);
	CHECK(trace.steps.size() == 1);
	CHECK(trace.counts.iteration == 1);
}

TEST_CASE("candidate enumeration matches the definitional census") {
	std::mt19937 rng(991);
	const RuleKind kinds[] = {RuleKind::Merge, RuleKind::Iteration, RuleKind::Shortcut,
	                          RuleKind::DShortcut};
	int nets = 0;
	for (int round = 0; round < 220; ++round) {
		cwn::testing::GenParams prm;
		prm.expansions = 3 + static_cast<int>(rng() % 6);
		prm.cover_prob = (round % 3 == 0) ? 0.7 : 1.0;
		const ColoredWorkflowNet cnet = (round % 4 == 3)
		                                    ? cwn::testing::random_non_fc_net(rng, prm)
		                                    : cwn::testing::random_fc_net(rng, prm);
		++nets;
		for (RuleKind k : kinds)
			CHECK(enumerate_applicable(cnet, k) == cwn::testing::naive_applicable(cnet, k));
	}
	CHECK(nets == 220);

	// Fixed nets with known instances.
	const ColoredWorkflowNet twins = twin_net();
	const auto merges = enumerate_applicable(twins, RuleKind::Merge);
	REQUIRE(merges.size() == 1);
	CHECK(merges.front().operands ==
	      std::vector<NodeId>{id_of(twins, "t1"), id_of(twins, "t2")});

	const ColoredWorkflowNet loops = loop_net();
	const auto iters = enumerate_applicable(loops, RuleKind::Iteration);
	REQUIRE(iters.size() == 1);
	CHECK(iters.front().operands == std::vector<NodeId>{id_of(loops, "L")});
}

TEST_CASE("every applicable rule preserves the observable behaviour") {
	std::mt19937 rng(4242);
	const RuleKind kinds[] = {RuleKind::Merge, RuleKind::Iteration, RuleKind::Shortcut,
	                          RuleKind::DShortcut};
	std::size_t checked = 0;
	for (int round = 0; round < 12; ++round) {
		cwn::testing::GenParams prm;
		prm.expansions = 4;
		prm.max_color = 2;
		prm.cover_prob = (round % 2 == 0) ? 1.0 : 0.8;
		const ColoredWorkflowNet cnet = cwn::testing::random_fc_net(rng, prm);
		for (RuleKind k : kinds) {
			for (const Candidate& c : enumerate_applicable(cnet, k)) {
				const RuleResult r = apply_candidate(cnet, c);
				CHECK(validate(r.net).empty());
				const EquivalenceReport eq = check_equivalence(cnet, r.net);
				if (eq.capped) continue;
				INFO("rule ", to_string(k), " on net of ", cnet.net.places().size(),
				     " places: ", eq.detail);
				CHECK(eq.equivalent);
				++checked;
			}
		}
	}
	CHECK(checked > 20);
}

TEST_CASE("size invariants of the rules") {
	std::mt19937 rng(77);
	for (int round = 0; round < 40; ++round) {
		cwn::testing::GenParams prm;
		prm.expansions = 5;
		const ColoredWorkflowNet cnet = cwn::testing::random_fc_net(rng, prm);
		for (const Candidate& c : enumerate_applicable(cnet, RuleKind::Merge)) {
			const RuleResult r = apply_candidate(cnet, c);
			CHECK(r.net.net.transitions().size() + 1 == cnet.net.transitions().size());
			CHECK(r.net.net.places().size() == cnet.net.places().size());
		}
		for (const Candidate& c : enumerate_applicable(cnet, RuleKind::Iteration)) {
			const RuleResult r = apply_candidate(cnet, c);
			CHECK(r.net.net.transitions().size() + 1 == cnet.net.transitions().size());
		}
		for (const Candidate& c : enumerate_applicable(cnet, RuleKind::DShortcut)) {
			const RuleResult r = apply_candidate(cnet, c);
			CHECK(r.net.net.arc_count() <= cnet.net.arc_count());
		}
	}
}

TEST_CASE("the unsound parallel join stays blocked") {
	const ColoredWorkflowNet dbl = double_token_net();
	// The only structural shortcut would have to write o twice, so after the
	// first leg collapses the second is not applicable.
	const auto ds = enumerate_applicable(dbl, RuleKind::DShortcut);
	REQUIRE(ds.size() == 1);
	const RuleResult r = apply_candidate(dbl, ds.front());
	CHECK(enumerate_applicable(r.net, RuleKind::DShortcut).empty());
	CHECK(enumerate_applicable(r.net, RuleKind::Shortcut).empty());
	const EquivalenceReport eq = check_equivalence(dbl, r.net);
	CHECK(eq.equivalent);
}
