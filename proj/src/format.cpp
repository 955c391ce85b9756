#include "cwn/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cwn/error.hpp"

namespace cwn {

namespace {

// ---------------------------------------------------------------- tokens

enum class Tok {
	Ident,
	Int,
	Str,
	LParen,
	RParen,
	Comma,
	Arrow,
	LBrace,
	RBrace,
	Colon,
	Star,
};

struct Token {
	Tok kind = Tok::Ident;
	std::string text;
	std::int64_t ival = 0;
	int line = 1;
	int col = 1;
};

const std::set<std::string>& keywords() {
	static const std::set<std::string> kw = {"net",  "mode", "place", "trans",
	                                         "pair", "entry", "exit"};
	return kw;
}

bool ident_start(char c) {
	return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
	return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(const std::string& text) {
	std::vector<Token> out;
	int line = 1;
	int col = 1;
	std::size_t i = 0;
	auto advance = [&] {
		if (text[i] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
		++i;
	};
	while (i < text.size()) {
		char c = text[i];
		if (c == '#') {
			while (i < text.size() && text[i] != '\n') advance();
			continue;
		}
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance();
			continue;
		}
		Token t;
		t.line = line;
		t.col = col;
		auto single = [&](Tok k) {
			t.kind = k;
			advance();
		};
		if (c == '(') {
			single(Tok::LParen);
		} else if (c == ')') {
			single(Tok::RParen);
		} else if (c == ',') {
			single(Tok::Comma);
		} else if (c == '{') {
			single(Tok::LBrace);
		} else if (c == '}') {
			single(Tok::RBrace);
		} else if (c == ':') {
			single(Tok::Colon);
		} else if (c == '*') {
			single(Tok::Star);
		} else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
			t.kind = Tok::Arrow;
			advance();
			advance();
		} else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
			std::string num;
			if (c == '-') {
				num += c;
				advance();
			}
			if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
				throw ParseError(line, "expected digits after '-' (column " +
				                           std::to_string(t.col) + ")");
			while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
				num += text[i];
				advance();
			}
			t.kind = Tok::Int;
			t.text = num;
			try {
				t.ival = std::stoll(num);
			} catch (const std::exception&) {
				throw ParseError(t.line, "integer out of range: " + num);
			}
		} else if (ident_start(c)) {
			std::string word;
			while (i < text.size() && ident_char(text[i])) {
				word += text[i];
				advance();
			}
			t.kind = Tok::Ident;
			t.text = word;
		} else if (c == '"') {
			advance();
			std::string s;
			bool closed = false;
			while (i < text.size()) {
				char d = text[i];
				if (d == '\n') break;
				if (d == '\\') {
					advance();
					if (i >= text.size())
						throw ParseError(t.line, "dangling escape in string");
					s += text[i];
					advance();
					continue;
				}
				if (d == '"') {
					advance();
					closed = true;
					break;
				}
				s += d;
				advance();
			}
			if (!closed)
				throw ParseError(t.line, "unterminated string (column " +
				                             std::to_string(t.col) + ")");
			t.kind = Tok::Str;
			t.text = s;
		} else {
			throw ParseError(line, std::string("unexpected character '") + c +
			                           "' (column " + std::to_string(col) + ")");
		}
		out.push_back(std::move(t));
	}
	return out;
}

// ---------------------------------------------------------------- parser

class NativeParser {
public:
	explicit NativeParser(const std::string& text) : toks_(tokenize(text)) {}

	ColoredWorkflowNet parse();

private:
	struct TransRec {
		NodeId id = kNoNode;
		std::vector<NodeId> ins;
		std::vector<NodeId> outs;
		std::set<TransformerPair> pairs;
		bool has_pairs = false;
		int line = 1;
	};

	std::vector<Token> toks_;
	std::size_t pos_ = 0;
	ColoredWorkflowNet cnet_;
	std::map<NodeId, TransRec> trans_;

	bool at_end() const { return pos_ >= toks_.size(); }
	const Token& peek() const { return toks_[pos_]; }
	int here() const { return at_end() ? last_line() : peek().line; }
	int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }

	bool is_keyword(const Token& t) const {
		return t.kind == Tok::Ident && keywords().count(t.text) > 0;
	}
	bool starts_value() const {
		if (at_end() || is_keyword(peek())) return false;
		Tok k = peek().kind;
		return k == Tok::LParen || k == Tok::Int || k == Tok::Ident || k == Tok::Star;
	}
	bool starts_name() const {
		if (at_end() || is_keyword(peek())) return false;
		return peek().kind == Tok::Ident || peek().kind == Tok::Str;
	}

	Token take(Tok k, const std::string& what) {
		if (at_end()) throw ParseError(last_line(), "unexpected end of input, expected " + what);
		if (peek().kind != k) throw ParseError(peek().line, "expected " + what);
		return toks_[pos_++];
	}
	std::string take_name(const std::string& what) {
		if (!starts_name())
			throw ParseError(here(), "expected " + what);
		return toks_[pos_++].text;
	}

	Atom parse_atom() {
		if (at_end()) throw ParseError(last_line(), "unexpected end of input inside a value");
		const Token& t = toks_[pos_++];
		switch (t.kind) {
			case Tok::Int: return Atom{t.ival};
			case Tok::Ident: return Atom{t.text};
			case Tok::Star: return unit_atom();
			default: throw ParseError(t.line, "expected an atom");
		}
	}

	ColorValue parse_value() {
		if (peek().kind != Tok::LParen) return ColorValue{parse_atom()};
		int line = peek().line;
		++pos_;
		ColorValue v;
		v.push_back(parse_atom());
		while (!at_end() && peek().kind == Tok::Comma) {
			++pos_;
			v.push_back(parse_atom());
		}
		take(Tok::RParen, "')' closing the value started on line " + std::to_string(line));
		return v;
	}

	std::vector<ColorValue> parse_values() {
		std::vector<ColorValue> vs;
		while (starts_value()) vs.push_back(parse_value());
		return vs;
	}

	NodeId resolve_place(const std::string& name, int line) {
		auto id = cnet_.net.find(name);
		if (!id || !cnet_.net.is_place(*id))
			throw ParseError(line, "unknown place '" + name + "'");
		return *id;
	}

	void parse_place(int line);
	void parse_trans(int line);
	void parse_pair(int line);
	void finish(const std::string& entry_name, int entry_line, const std::string& exit_name,
	            int exit_line);
};

void NativeParser::parse_place(int line) {
	std::string name = take_name("a place name");
	NodeId p;
	try {
		p = cnet_.net.add_place(name);
	} catch (const Error& e) {
		throw ParseError(line, e.what());
	}
	if (!at_end() && peek().kind == Tok::LBrace) {
		++pos_;
		std::vector<ColorValue> vs = parse_values();
		take(Tok::RBrace, "'}' closing the color set of place '" + name + "'");
		try {
			cnet_.colors[p] = ColorSet(std::move(vs));
		} catch (const Error& e) {
			throw ParseError(line, std::string("place '") + name + "': " + e.what());
		}
	} else {
		cnet_.colors[p] = ColorSet::unit();
	}
}

void NativeParser::parse_trans(int line) {
	std::string name = take_name("a transition name");
	NodeId t;
	try {
		t = cnet_.net.add_transition(name);
	} catch (const Error& e) {
		throw ParseError(line, e.what());
	}
	take(Tok::Colon, "':' after transition name '" + name + "'");
	TransRec rec;
	rec.id = t;
	rec.line = line;
	while (starts_name()) rec.ins.push_back(resolve_place(toks_[pos_++].text, line));
	take(Tok::Arrow, "'->' separating inputs and outputs of '" + name + "'");
	while (starts_name()) rec.outs.push_back(resolve_place(toks_[pos_++].text, line));
	try {
		for (NodeId p : rec.ins) cnet_.net.add_arc(p, t);
		for (NodeId p : rec.outs) cnet_.net.add_arc(t, p);
	} catch (const Error& e) {
		throw ParseError(line, std::string("transition '") + name + "': " + e.what());
	}
	trans_.emplace(t, std::move(rec));
}

void NativeParser::parse_pair(int line) {
	std::string name = take_name("a transition name");
	auto id = cnet_.net.find(name);
	if (!id || !cnet_.net.is_transition(*id))
		throw ParseError(line, "pair names unknown transition '" + name + "'");
	TransRec& rec = trans_.at(*id);
	take(Tok::Colon, "':' after pair transition '" + name + "'");
	std::vector<ColorValue> ins = parse_values();
	take(Tok::Arrow, "'->' separating pair inputs and outputs");
	std::vector<ColorValue> outs = parse_values();
	if (ins.size() != rec.ins.size())
		throw ParseError(line, "pair of '" + name + "' has " + std::to_string(ins.size()) +
		                           " input values for " + std::to_string(rec.ins.size()) +
		                           " input places");
	if (outs.size() != rec.outs.size())
		throw ParseError(line, "pair of '" + name + "' has " + std::to_string(outs.size()) +
		                           " output values for " + std::to_string(rec.outs.size()) +
		                           " output places");
	auto check = [&](const std::vector<NodeId>& places, const std::vector<ColorValue>& vals) {
		for (std::size_t i = 0; i < places.size(); ++i) {
			if (!cnet_.colors.at(places[i]).contains(vals[i]))
				throw ParseError(line, "pair of '" + name + "': value " + to_string(vals[i]) +
				                           " is not in the color set of place '" +
				                           cnet_.net.name(places[i]) + "'");
		}
	};
	check(rec.ins, ins);
	check(rec.outs, outs);
	rec.pairs.insert(TransformerPair{std::move(ins), std::move(outs)});
	rec.has_pairs = true;
}

void NativeParser::finish(const std::string& entry_name, int entry_line,
                          const std::string& exit_name, int exit_line) {
	for (auto& [t, rec] : trans_) {
		if (!rec.has_pairs) {
			bool all_unit = true;
			for (NodeId p : rec.ins)
				if (!(cnet_.colors.at(p) == ColorSet::unit())) all_unit = false;
			for (NodeId p : rec.outs)
				if (!(cnet_.colors.at(p) == ColorSet::unit())) all_unit = false;
			if (all_unit) {
				TransformerPair unit;
				unit.in.assign(rec.ins.size(), unit_value());
				unit.out.assign(rec.outs.size(), unit_value());
				rec.pairs.insert(std::move(unit));
			}
		}
		try {
			cnet_.transformers[t] = Transformer(rec.ins, rec.outs, rec.pairs);
		} catch (const Error& e) {
			throw ParseError(rec.line,
			                 std::string("transition '") + cnet_.net.name(t) + "': " + e.what());
		}
	}

	NodeId entry = kNoNode;
	NodeId exit = kNoNode;
	if (!entry_name.empty()) entry = resolve_place(entry_name, entry_line);
	if (!exit_name.empty()) exit = resolve_place(exit_name, exit_line);
	if (entry == kNoNode || exit == kNoNode) {
		std::vector<NodeId> sources;
		std::vector<NodeId> sinks;
		for (NodeId p : cnet_.net.places()) {
			if (cnet_.net.preset(p).empty()) sources.push_back(p);
			if (cnet_.net.postset(p).empty()) sinks.push_back(p);
		}
		if (entry == kNoNode) {
			if (sources.size() != 1)
				throw ParseError(last_line(),
				                 "no entry directive and the net does not have exactly one "
				                 "place without inputs");
			entry = sources.front();
		}
		if (exit == kNoNode) {
			if (sinks.size() != 1)
				throw ParseError(last_line(),
				                 "no exit directive and the net does not have exactly one "
				                 "place without outputs");
			exit = sinks.front();
		}
	}
	try {
		cnet_.net.set_entry(entry);
		cnet_.net.set_exit(exit);
	} catch (const Error& e) {
		throw ParseError(last_line(), e.what());
	}

	if (cnet_.mode == Mode::Strict) {
		for (const auto& [t, rec] : trans_) {
			const Transformer& tr = cnet_.transformers.at(t);
			std::vector<ColorSet> sets = cnet_.color_sets_for(tr.inputs());
			if (!check_left_total(tr, sets)) {
				auto missing = find_uncovered_input(tr, sets);
				throw ParseError(rec.line, "strict mode: transformer of '" +
				                               cnet_.net.name(t) +
				                               "' is not left-total; first uncovered input: " +
				                               to_string(*missing));
			}
		}
	}
}

ColoredWorkflowNet NativeParser::parse() {
	std::string entry_name;
	std::string exit_name;
	int entry_line = 1;
	int exit_line = 1;
	bool saw_name = false;
	bool saw_mode = false;
	while (!at_end()) {
		const Token& kw = peek();
		if (!is_keyword(kw))
			throw ParseError(kw.line,
			                 "expected a directive (net, mode, place, trans, pair, entry, exit)");
		++pos_;
		int line = kw.line;
		const std::string& word = kw.text;
		if (word == "net") {
			if (saw_name) throw ParseError(line, "duplicate net directive");
			saw_name = true;
			cnet_.name = take_name("the net name");
		} else if (word == "mode") {
			if (saw_mode) throw ParseError(line, "duplicate mode directive");
			saw_mode = true;
			std::string m = take_name("'strict' or 'permissive'");
			if (m == "strict")
				cnet_.mode = Mode::Strict;
			else if (m == "permissive")
				cnet_.mode = Mode::Permissive;
			else
				throw ParseError(line, "mode must be 'strict' or 'permissive', got '" + m + "'");
		} else if (word == "place") {
			parse_place(line);
		} else if (word == "trans") {
			parse_trans(line);
		} else if (word == "pair") {
			parse_pair(line);
		} else if (word == "entry") {
			if (!entry_name.empty()) throw ParseError(line, "duplicate entry directive");
			entry_name = take_name("the entry place name");
			entry_line = line;
		} else {
			if (!exit_name.empty()) throw ParseError(line, "duplicate exit directive");
			exit_name = take_name("the exit place name");
			exit_line = line;
		}
	}
	finish(entry_name, entry_line, exit_name, exit_line);
	return std::move(cnet_);
}

// ---------------------------------------------------------------- emitter

bool bare_name_ok(const std::string& s) {
	if (s.empty() || !ident_start(s[0])) return false;
	for (char c : s)
		if (!ident_char(c)) return false;
	if (keywords().count(s)) return false;
	return s != "strict" && s != "permissive";
}

std::string name_text(const std::string& s) {
	if (bare_name_ok(s)) return s;
	std::string out = "\"";
	for (char c : s) {
		if (c == '"' || c == '\\') out += '\\';
		out += c;
	}
	out += '"';
	return out;
}

bool has_implicit_unit_pair(const ColoredWorkflowNet& cnet, const Transformer& tr) {
	for (NodeId p : tr.inputs())
		if (!(cnet.color_set(p) == ColorSet::unit())) return false;
	for (NodeId p : tr.outputs())
		if (!(cnet.color_set(p) == ColorSet::unit())) return false;
	TransformerPair unit;
	unit.in.assign(tr.inputs().size(), unit_value());
	unit.out.assign(tr.outputs().size(), unit_value());
	return tr.size() == 1 && tr.contains(unit);
}

std::string slurp(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot read file: " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

}  // namespace

ColoredWorkflowNet parse_native(const std::string& text) {
	return NativeParser(text).parse();
}

ColoredWorkflowNet parse_native_file(const std::string& path) {
	return parse_native(slurp(path));
}

std::string emit_native(const ColoredWorkflowNet& cnet) {
	std::ostringstream os;
	os << "net " << name_text(cnet.name) << "\n";
	os << "mode " << (cnet.mode == Mode::Strict ? "strict" : "permissive") << "\n\n";

	for (NodeId p : cnet.net.places()) {
		os << "place " << name_text(cnet.net.name(p));
		const ColorSet& cs = cnet.color_set(p);
		if (!(cs == ColorSet::unit())) {
			std::vector<std::string> rendered;
			std::size_t width = 0;
			for (const ColorValue& v : cs.values()) {
				rendered.push_back(to_string(v));
				width += rendered.back().size() + 1;
			}
			if (width <= 72) {
				os << " {";
				for (const std::string& r : rendered) os << ' ' << r;
				os << " }";
			} else {
				os << " {\n";
				std::size_t col = 0;
				for (const std::string& r : rendered) {
					if (col == 0) {
						os << '\t' << r;
						col = 8 + r.size();
					} else if (col + 1 + r.size() > 96) {
						os << "\n\t" << r;
						col = 8 + r.size();
					} else {
						os << ' ' << r;
						col += 1 + r.size();
					}
				}
				os << "\n}";
			}
		}
		os << "\n";
	}
	os << "\n";

	for (NodeId t : cnet.net.transitions()) {
		const Transformer& tr = cnet.transformer(t);
		os << "trans " << name_text(cnet.net.name(t)) << " :";
		for (NodeId p : tr.inputs()) os << ' ' << name_text(cnet.net.name(p));
		os << " ->";
		for (NodeId p : tr.outputs()) os << ' ' << name_text(cnet.net.name(p));
		os << "\n";
		if (!has_implicit_unit_pair(cnet, tr)) {
			for (const TransformerPair& pr : tr.pairs()) {
				os << "pair " << name_text(cnet.net.name(t)) << " : " << to_string(pr.in)
				   << " -> " << to_string(pr.out) << "\n";
			}
		}
	}
	os << "\n";
	os << "entry " << name_text(cnet.net.name(cnet.net.entry())) << "\n";
	os << "exit " << name_text(cnet.net.name(cnet.net.exit())) << "\n";
	return os.str();
}

// ---------------------------------------------------------------- pnml

namespace {

struct PnmlTag {
	std::string local;
	std::map<std::string, std::string> attrs;
	int line = 1;
};

std::string lower(std::string s) {
	for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
	return s;
}

std::vector<PnmlTag> scan_tags(const std::string& text) {
	std::vector<PnmlTag> tags;
	int line = 1;
	std::size_t i = 0;
	auto advance = [&] {
		if (text[i] == '\n') ++line;
		++i;
	};
	auto skip_until = [&](const std::string& end) {
		while (i < text.size() && text.compare(i, end.size(), end) != 0) advance();
		for (std::size_t k = 0; k < end.size() && i < text.size(); ++k) advance();
	};
	while (i < text.size()) {
		if (text[i] != '<') {
			advance();
			continue;
		}
		int tag_line = line;
		advance();
		if (i >= text.size()) break;
		if (text[i] == '?') {
			skip_until("?>");
			continue;
		}
		if (text[i] == '!') {
			if (text.compare(i, 3, "!--") == 0)
				skip_until("-->");
			else
				skip_until(">");
			continue;
		}
		if (text[i] == '/') {
			skip_until(">");
			continue;
		}
		std::string name;
		while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
		       text[i] != '>' && text[i] != '/') {
			name += text[i];
			advance();
		}
		PnmlTag tag;
		auto colon = name.rfind(':');
		tag.local = lower(colon == std::string::npos ? name : name.substr(colon + 1));
		tag.line = tag_line;
		while (i < text.size()) {
			while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) advance();
			if (i >= text.size()) throw ParseError(tag_line, "unterminated tag <" + name + ">");
			if (text[i] == '>') {
				advance();
				break;
			}
			if (text[i] == '/') {
				advance();
				continue;
			}
			std::string key;
			while (i < text.size() && text[i] != '=' && text[i] != '>' &&
			       !std::isspace(static_cast<unsigned char>(text[i]))) {
				key += text[i];
				advance();
			}
			while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) advance();
			if (i >= text.size() || text[i] != '=')
				throw ParseError(tag_line, "attribute '" + key + "' of <" + name +
				                               "> has no value");
			advance();
			while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) advance();
			if (i >= text.size() || (text[i] != '"' && text[i] != '\''))
				throw ParseError(tag_line, "attribute '" + key + "' of <" + name +
				                               "> is not quoted");
			char quote = text[i];
			advance();
			std::string value;
			while (i < text.size() && text[i] != quote) {
				value += text[i];
				advance();
			}
			if (i >= text.size())
				throw ParseError(tag_line, "unterminated attribute value in <" + name + ">");
			advance();
			auto kcolon = key.rfind(':');
			tag.attrs[lower(kcolon == std::string::npos ? key : key.substr(kcolon + 1))] = value;
		}
		tags.push_back(std::move(tag));
	}
	return tags;
}

}  // namespace

ColoredWorkflowNet import_pnml(const std::string& text) {
	std::vector<PnmlTag> tags = scan_tags(text);
	ColoredWorkflowNet cnet;
	cnet.name = "pnml";
	std::map<std::string, NodeId> by_id;
	std::vector<std::tuple<std::string, std::string, int>> arcs;
	for (const PnmlTag& tag : tags) {
		if (tag.local == "net" && tag.attrs.count("id")) cnet.name = tag.attrs.at("id");
		if (tag.local != "place" && tag.local != "transition" && tag.local != "arc") continue;
		if (tag.local == "arc") {
			auto s = tag.attrs.find("source");
			auto t = tag.attrs.find("target");
			if (s == tag.attrs.end() || t == tag.attrs.end())
				throw ParseError(tag.line, "<arc> without source/target");
			arcs.emplace_back(s->second, t->second, tag.line);
			continue;
		}
		auto id = tag.attrs.find("id");
		if (id == tag.attrs.end())
			throw ParseError(tag.line, "<" + tag.local + "> without an id attribute");
		try {
			NodeId n = tag.local == "place" ? cnet.net.add_place(id->second)
			                                : cnet.net.add_transition(id->second);
			by_id[id->second] = n;
			if (tag.local == "place") cnet.colors[n] = ColorSet::unit();
		} catch (const Error& e) {
			throw ParseError(tag.line, e.what());
		}
	}
	for (const auto& [src, dst, line] : arcs) {
		auto s = by_id.find(src);
		auto t = by_id.find(dst);
		if (s == by_id.end()) throw ParseError(line, "arc source '" + src + "' is not declared");
		if (t == by_id.end()) throw ParseError(line, "arc target '" + dst + "' is not declared");
		try {
			cnet.net.add_arc(s->second, t->second);
		} catch (const Error& e) {
			throw ParseError(line, e.what());
		}
	}

	std::vector<NodeId> sources;
	std::vector<NodeId> sinks;
	for (NodeId p : cnet.net.places()) {
		if (cnet.net.preset(p).empty()) sources.push_back(p);
		if (cnet.net.postset(p).empty()) sinks.push_back(p);
	}
	if (sources.size() != 1)
		throw ParseError(1, "expected exactly one source place, found " +
		                        std::to_string(sources.size()));
	if (sinks.size() != 1)
		throw ParseError(1, "expected exactly one sink place, found " +
		                        std::to_string(sinks.size()));
	cnet.net.set_entry(sources.front());
	cnet.net.set_exit(sinks.front());

	for (NodeId t : cnet.net.transitions()) {
		const auto& pre = cnet.net.preset(t);
		const auto& post = cnet.net.postset(t);
		std::vector<NodeId> ins(pre.begin(), pre.end());
		std::vector<NodeId> outs(post.begin(), post.end());
		TransformerPair unit;
		unit.in.assign(ins.size(), unit_value());
		unit.out.assign(outs.size(), unit_value());
		cnet.transformers[t] = Transformer(ins, outs, {unit});
	}

	std::vector<Violation> vs = validate(cnet);
	if (!vs.empty()) {
		std::string msg = "imported net is not a workflow net:";
		for (const Violation& v : vs) msg += " " + v.message + ";";
		msg.pop_back();
		throw ParseError(1, msg);
	}
	return cnet;
}

ColoredWorkflowNet import_pnml_file(const std::string& path) {
	return import_pnml(slurp(path));
}

ColoredWorkflowNet read_net_file(const std::string& path) {
	auto dot = path.rfind('.');
	std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
	if (ext == "pnml" || ext == "xml") return import_pnml_file(path);
	return parse_native_file(path);
}

// ---------------------------------------------------------------- reports

std::string trace_to_json(const ReductionTrace& trace) {
	nlohmann::json j;
	j["steps"] = nlohmann::json::array();
	for (const RuleApplication& s : trace.steps) {
		nlohmann::json e;
		e["rule"] = to_string(s.kind);
		e["operands"] = s.operands;
		e["created"] = s.created;
		e["removed"] = s.removed;
		e["places"] = s.places_after;
		e["transitions"] = s.transitions_after;
		e["clusters"] = s.clusters_after;
		if (!s.note.empty()) e["note"] = s.note;
		j["steps"].push_back(std::move(e));
	}
	j["counts"] = {{"merge", trace.counts.merge},
	               {"iteration", trace.counts.iteration},
	               {"shortcut", trace.counts.shortcut},
	               {"d_shortcut", trace.counts.d_shortcut},
	               {"total", trace.counts.total()}};
	return j.dump(2) + "\n";
}

std::string summary_to_text(const Transformer& summary) {
	std::string out;
	for (const TransformerPair& p : summary.pairs()) {
		out += to_string(p.in);
		out += " -> ";
		out += to_string(p.out);
		out += '\n';
	}
	return out;
}

}
