#include "doctest.h"

#include <algorithm>

#include "cwn/error.hpp"
#include "cwn/net.hpp"

using namespace cwn;

namespace {

/// i -> a -> p -> b -> o
WorkflowNet chain_net() {
	WorkflowNet net;
	const NodeId i = net.add_place("i");
	const NodeId p = net.add_place("p");
	const NodeId o = net.add_place("o");
	const NodeId a = net.add_transition("a");
	const NodeId b = net.add_transition("b");
	net.add_arc(i, a);
	net.add_arc(a, p);
	net.add_arc(p, b);
	net.add_arc(b, o);
	net.set_entry(i);
	net.set_exit(o);
	return net;
}

bool has_clause(const std::vector<Violation>& vs, const std::string& clause) {
	return std::any_of(vs.begin(), vs.end(),
	                   [&](const Violation& v) { return v.clause == clause; });
}

}

TEST_CASE("node construction and lookup") {
	WorkflowNet net;
	const NodeId p = net.add_place("p");
	const NodeId t = net.add_transition("t");
	CHECK(p == 0);
	CHECK(t == 1);
	CHECK(net.is_place(p));
	CHECK(net.is_transition(t));
	CHECK(net.kind(p) == NodeKind::Place);
	CHECK(net.name(t) == "t");
	CHECK(net.find("p") == p);
	CHECK(!net.find("q").has_value());
	CHECK_THROWS_AS(net.add_place("p"), Error);
	CHECK_THROWS_AS(net.add_transition("p"), Error);
	CHECK_THROWS_AS(net.add_place(""), Error);
	CHECK_THROWS_AS((void)net.name(99), Error);
	CHECK_THROWS_AS((void)net.kind(99), Error);
}

TEST_CASE("arc bookkeeping") {
	WorkflowNet net;
	const NodeId p = net.add_place("p");
	const NodeId q = net.add_place("q");
	const NodeId t = net.add_transition("t");
	net.add_arc(p, t);
	net.add_arc(t, q);
	CHECK(net.has_arc(p, t));
	CHECK(!net.has_arc(t, p));
	CHECK(net.postset(p) == std::set<NodeId>{t});
	CHECK(net.preset(q) == std::set<NodeId>{t});
	CHECK(net.arc_count() == 2);
	CHECK(net.arcs().size() == 2);

	CHECK_THROWS_AS(net.add_arc(p, q), Error);       // place to place
	CHECK_THROWS_AS(net.add_arc(p, t), Error);       // duplicate
	CHECK_THROWS_AS(net.add_arc(p, 42), Error);      // unknown endpoint

	net.remove_arc(p, t);
	CHECK(!net.has_arc(p, t));
	CHECK(net.arc_count() == 1);
	CHECK_THROWS_AS(net.remove_arc(p, t), Error);
}

TEST_CASE("remove_node detaches everything") {
	WorkflowNet net = chain_net();
	const NodeId p = *net.find("p");
	const NodeId a = *net.find("a");
	const NodeId b = *net.find("b");
	net.remove_node(p);
	CHECK(!net.has_node(p));
	CHECK(net.postset(a).empty());
	CHECK(net.preset(b).empty());
	CHECK(net.find("p") == std::nullopt);

	net.remove_node(*net.find("i"));
	CHECK(net.entry() == kNoNode);
	CHECK_THROWS_AS(net.remove_node(p), Error);
}

TEST_CASE("ids are never reused and fresh_name avoids collisions") {
	WorkflowNet net;
	const NodeId p = net.add_place("p");
	CHECK(net.next_id() == 1);
	net.remove_node(p);
	CHECK(net.next_id() == 1);
	const NodeId q = net.add_place("q");
	CHECK(q == 1);

	CHECK(net.fresh_name("r") == "r");
	CHECK(net.fresh_name("q") == "q#2");
}

TEST_CASE("validate accepts a well-formed chain") {
	CHECK(validate(chain_net()).empty());
}

TEST_CASE("validate reports shape violations") {
	SUBCASE("missing entry and exit") {
		WorkflowNet net;
		net.add_place("p");
		const std::vector<Violation> vs = validate(net);
		CHECK(has_clause(vs, "entry"));
		CHECK(has_clause(vs, "exit"));
	}
	SUBCASE("entry equals exit") {
		WorkflowNet net;
		const NodeId p = net.add_place("p");
		net.set_entry(p);
		net.set_exit(p);
		CHECK(has_clause(validate(net), "entry-exit-distinct"));
	}
	SUBCASE("entry with incoming arc") {
		WorkflowNet net = chain_net();
		net.add_arc(*net.find("b"), *net.find("i"));
		CHECK(has_clause(validate(net), "entry-no-incoming"));
	}
	SUBCASE("exit with outgoing arc") {
		WorkflowNet net = chain_net();
		net.add_arc(*net.find("o"), *net.find("a"));
		CHECK(has_clause(validate(net), "exit-no-outgoing"));
	}
	SUBCASE("transition without inputs or outputs") {
		WorkflowNet net = chain_net();
		net.add_transition("loose");
		const std::vector<Violation> vs = validate(net);
		CHECK(has_clause(vs, "transition-inputs"));
		CHECK(has_clause(vs, "transition-outputs"));
	}
	SUBCASE("node off every entry-exit path") {
		WorkflowNet net = chain_net();
		const NodeId dead = net.add_place("dead");
		const NodeId t = net.add_transition("spur");
		net.add_arc(*net.find("i"), t);
		net.add_arc(t, dead);
		const std::vector<Violation> vs = validate(net);
		REQUIRE(has_clause(vs, "strongly-connected"));
		for (const Violation& v : vs)
			if (v.clause == "strongly-connected")
				CHECK(std::count(v.nodes.begin(), v.nodes.end(), dead) == 1);
	}
}

TEST_CASE("cluster partition of a choice with a join") {
	// i -> a -> p; p -> b -> o; p -> c -> o
	WorkflowNet net;
	const NodeId i = net.add_place("i");
	const NodeId p = net.add_place("p");
	const NodeId o = net.add_place("o");
	const NodeId a = net.add_transition("a");
	const NodeId b = net.add_transition("b");
	const NodeId c = net.add_transition("c");
	net.add_arc(i, a);
	net.add_arc(a, p);
	net.add_arc(p, b);
	net.add_arc(b, o);
	net.add_arc(p, c);
	net.add_arc(c, o);
	net.set_entry(i);
	net.set_exit(o);

	const ClusterPartition parts(net);
	CHECK(parts.size() == 3);  // {i,a}, {p,b,c}, {o}
	const Cluster& pc = parts.cluster_of(p);
	CHECK(pc.places == std::vector<NodeId>{p});
	CHECK(pc.transitions == std::vector<NodeId>{b, c});
	CHECK(pc.representative == p);
	CHECK(&parts.cluster_of(b) == &pc);
	CHECK(parts.index_of(b) == parts.index_of(p));
	CHECK(pc.contains_place(p));
	CHECK(!pc.contains_place(i));
	CHECK(pc.contains_transition(c));
	CHECK_THROWS_AS((void)parts.index_of(99), Error);

	CHECK(is_free_choice_cluster(net, pc));
	CHECK(is_free_choice_net(net));
	CHECK(is_acyclic(net));

	CHECK(unconditionally_enables(net, a, pc));
	CHECK(!unconditionally_enables(net, b, pc));
}

TEST_CASE("shared place with differing presets breaks free choice") {
	// p feeds both b and j, but j also needs q.
	WorkflowNet net;
	const NodeId i = net.add_place("i");
	const NodeId p = net.add_place("p");
	const NodeId q = net.add_place("q");
	const NodeId o = net.add_place("o");
	const NodeId a = net.add_transition("a");
	const NodeId b = net.add_transition("b");
	const NodeId j = net.add_transition("j");
	net.add_arc(i, a);
	net.add_arc(a, p);
	net.add_arc(a, q);
	net.add_arc(p, b);
	net.add_arc(b, o);
	net.add_arc(p, j);
	net.add_arc(q, j);
	net.add_arc(j, o);
	net.set_entry(i);
	net.set_exit(o);

	const ClusterPartition parts(net);
	const Cluster& pc = parts.cluster_of(p);
	CHECK(pc.places == std::vector<NodeId>{p, q});
	CHECK(pc.transitions == std::vector<NodeId>{b, j});
	CHECK(!is_free_choice_cluster(net, pc));
	CHECK(!is_free_choice_net(net));
}

TEST_CASE("cycle detection ignores the closure arc") {
	WorkflowNet net = chain_net();
	CHECK(is_acyclic(net));
	const NodeId back = net.add_transition("back");
	net.add_arc(*net.find("p"), back);
	net.add_arc(back, *net.find("p"));
	CHECK(!is_acyclic(net));
}

TEST_CASE("markings are multisets") {
	Marking m = Marking::single(3, 2);
	CHECK(m.count(3) == 2);
	CHECK(m.total() == 2);
	m.add(5);
	CHECK(m.total() == 3);
	m.remove(3, 2);
	CHECK(m.count(3) == 0);
	CHECK(m.counts().count(3) == 0);  // zero entries vanish
	CHECK_THROWS_AS(m.remove(3), Error);
	CHECK(Marking::single(3, 0).empty());
	CHECK(Marking::single(1) == Marking::single(1));
	CHECK(Marking::single(1) < Marking::single(2));
}

TEST_CASE("enabling and firing") {
	WorkflowNet net = chain_net();
	const NodeId i = *net.find("i");
	const NodeId p = *net.find("p");
	const NodeId o = *net.find("o");
	const NodeId a = *net.find("a");
	const NodeId b = *net.find("b");

	Marking m0 = Marking::single(i);
	CHECK(is_enabled(net, m0, a));
	CHECK(!is_enabled(net, m0, b));
	const Marking m1 = fire(net, m0, a);
	CHECK(m1 == Marking::single(p));
	CHECK(fire(net, m1, b) == Marking::single(o));
	CHECK_THROWS_AS(fire(net, m0, b), NotEnabledError);
	CHECK_THROWS_AS(fire(net, m0, i), Error);
}
