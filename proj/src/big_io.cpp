#include <set>
#include <sstream>

#include "bigs/big.hpp"
#include "bigs/errors.hpp"

namespace bigs {

namespace {

enum class Section { None, Frame, Motifs, Edges };

void check_token(const std::string& label) {
  if (label.empty() || label.find_first_of(" \t\r\n#") != std::string::npos)
    throw ArgumentError("label '" + label + "' cannot be written to a BIG file");
}

}  // namespace

Big load_big(std::istream& in) {
  std::vector<std::string> frame;
  std::unordered_map<std::string, std::size_t> unit_index;
  std::vector<BigMotif> motifs;
  std::unordered_map<std::string, std::size_t> motif_index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;
  std::optional<std::string> rule_text;
  int stages = 0;

  Section section = Section::None;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;

    const std::string& head = tok[0];
    if (tok.size() == 1 && (head == "FRAME" || head == "MOTIFS" || head == "EDGES")) {
      section = head == "FRAME" ? Section::Frame : head == "MOTIFS" ? Section::Motifs : Section::Edges;
      continue;
    }
    if (head == "STAGES") {
      if (tok.size() != 2) throw ParseError(line_no, "STAGES takes one integer");
      try {
        std::size_t used = 0;
        stages = std::stoi(tok[1], &used);
        if (used != tok[1].size() || stages < 0) throw std::invalid_argument("stages");
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad stage count '" + tok[1] + "'");
      }
      continue;
    }
    if (head == "RULE") {
      if (tok.size() != 2) throw ParseError(line_no, "RULE takes one rule name");
      rule_text = tok[1];
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError(line_no, "content before FRAME/MOTIFS/EDGES section");
      case Section::Frame:
        for (auto& label : tok) {
          if (!unit_index.emplace(label, frame.size()).second)
            throw ParseError(line_no, "duplicate frame unit '" + label + "'");
          frame.push_back(std::move(label));
        }
        break;
      case Section::Motifs: {
        if (tok.size() < 2) throw ParseError(line_no, "motif line needs an id and a y-value");
        BigMotif m;
        m.label = tok[0];
        try {
          m.y = parse_rational(tok[1]);
        } catch (const std::exception& e) {
          throw ParseError(line_no, "bad y-value '" + tok[1] + "' for motif '" + tok[0] + "'");
        }
        m.members.assign(tok.begin() + 2, tok.end());
        if (!motif_index.emplace(m.label, motifs.size()).second)
          throw ParseError(line_no, "duplicate motif '" + m.label + "'");
        motifs.push_back(std::move(m));
        break;
      }
      case Section::Edges: {
        if (tok.size() != 2) throw ParseError(line_no, "edge line needs '<unit> <motif>'");
        auto u = unit_index.find(tok[0]);
        if (u == unit_index.end()) throw ParseError(line_no, "unknown frame unit '" + tok[0] + "'");
        auto k = motif_index.find(tok[1]);
        if (k == motif_index.end()) throw ParseError(line_no, "unknown motif '" + tok[1] + "'");
        if (!seen_edges.emplace(u->second, k->second).second)
          throw ParseError(line_no, "duplicate edge " + tok[0] + " " + tok[1]);
        edges.emplace_back(u->second, k->second);
        break;
      }
    }
  }
  AncestorRule rule = AncestorRule::full(stages);
  if (rule_text) {
    try {
      rule = AncestorRule::parse(*rule_text, stages);
    } catch (const ArgumentError& e) {
      throw ParseError(0, e.what());
    }
  }
  return Big(std::move(frame), std::move(motifs), edges, rule, stages);
}

void write_big(std::ostream& out, const Big& big) {
  out << "RULE " << big.rule().name() << '\n';
  out << "STAGES " << big.stages_required() << '\n';
  out << "FRAME\n";
  for (std::size_t i = 0; i < big.frame_size(); ++i) {
    check_token(big.unit(i));
    out << big.unit(i) << ((i + 1) % 20 == 0 || i + 1 == big.frame_size() ? '\n' : ' ');
  }
  out << "MOTIFS\n";
  for (const auto& m : big.motifs()) {
    check_token(m.label);
    out << m.label << ' ' << to_exact_string(m.y);
    for (const auto& member : m.members) {
      check_token(member);
      out << ' ' << member;
    }
    out << '\n';
  }
  out << "EDGES\n";
  for (auto [i, k] : big.edges()) out << big.unit(i) << ' ' << big.motif(k).label << '\n';
}

}  // namespace bigs
