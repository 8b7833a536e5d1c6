#include <charconv>
#include <fstream>
#include <sstream>

#include "iyb/error.hpp"
#include "iyb/group.hpp"

namespace iyb {

namespace {

u64 parse_count(const std::string& s, const std::string& what) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<u64>> read_rows(std::istream& in, const std::string& source) {
  std::vector<std::vector<u64>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<u64> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_count(tok, "integer in " + source));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

Group parse_tokens(const std::vector<std::string>& tok, std::size_t& pos);

Group parse_tokens(const std::vector<std::string>& tok, std::size_t& pos) {
  if (pos >= tok.size()) throw ParseError("group spec ends early");
  const std::string kind = tok[pos++];
  auto arg = [&](const char* what) {
    if (pos >= tok.size()) throw ParseError(std::string("group spec: missing ") + what + " for " + kind);
    return tok[pos++];
  };
  if (kind == "cyclic") return Group::cyclic(parse_count(arg("order"), "order"));
  if (kind == "abelian") {
    std::vector<u64> orders;
    for (const auto& f : split(arg("factors"), 'x')) orders.push_back(parse_count(f, "factor order"));
    return Group::abelian(orders);
  }
  if (kind == "dihedral") return Group::dihedral(parse_count(arg("n"), "dihedral parameter"));
  if (kind == "dicyclic") return Group::dicyclic(parse_count(arg("n"), "dicyclic parameter"));
  if (kind == "quaternion") return Group::quaternion();
  if (kind == "symmetric") return Group::symmetric(static_cast<unsigned>(parse_count(arg("n"), "degree")));
  if (kind == "heis") return Group::heisenberg(parse_count(arg("q"), "prime"));
  if (kind == "table") return read_group_table(arg("path"));
  if (kind == "sdp") {
    Group n = parse_tokens(tok, pos);
    Group h = parse_tokens(tok, pos);
    return Group::semidirect(read_action_file(arg("action path"), h, n));
  }
  if (kind == "prod") {
    Group a = parse_tokens(tok, pos);
    Group b = parse_tokens(tok, pos);
    return Group::direct_product(a, b);
  }
  if (kind == "pow") {
    auto n = static_cast<unsigned>(parse_count(arg("exponent"), "exponent"));
    return Group::direct_power(parse_tokens(tok, pos), n);
  }
  throw ParseError("unknown group kind '" + kind + "'");
}

}  // namespace

Group parse_group_spec(const std::string& spec) {
  auto tok = split(spec, ':');
  std::size_t pos = 0;
  Group g = parse_tokens(tok, pos);
  if (pos != tok.size()) throw ParseError("trailing text in group spec '" + spec + "'");
  return g;
}

Group group_from_descriptor(const nlohmann::json& d) {
  try {
    if (d.is_string()) {
      const std::string s = d.get<std::string>();
      if (s.rfind("table:", 0) == 0 || s.rfind("sdp:", 0) == 0) throw ParseError("descriptor must be self-contained");
      return parse_group_spec(s);
    }
    const std::string type = d.at("type").get<std::string>();
    if (type == "table") return Group::from_table(d.at("table").get<std::vector<std::vector<u64>>>());
    if (type == "sdp") {
      Group n = group_from_descriptor(d.at("n"));
      Group h = group_from_descriptor(d.at("h"));
      return Group::semidirect(GroupAction(h, n, d.at("action").get<std::vector<Perm>>()));
    }
    if (type == "product") {
      const auto& f = d.at("factors");
      if (f.size() != 2) throw ParseError("product descriptor needs two factors");
      return Group::direct_product(group_from_descriptor(f[0]), group_from_descriptor(f[1]));
    }
    if (type == "power") return Group::direct_power(group_from_descriptor(d.at("base")), d.at("n").get<unsigned>());
    throw ParseError("unknown group descriptor type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed group descriptor: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid group descriptor: ") + e.what());
  }
}

Group read_group_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path);
  auto rows = read_rows(in, path);
  if (rows.empty() || rows[0].size() != 1) throw ParseError(path + ": first line must hold the order");
  u64 n = rows[0][0];
  if (rows.size() != n + 1) throw ParseError(path + ": expected " + std::to_string(n) + " table rows");
  rows.erase(rows.begin());
  return Group::from_table(std::move(rows));
}

void write_group_table(const Group& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  auto t = g.cayley_table();
  out << g.order() << "\n";
  for (const auto& row : t) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
}

GroupAction read_action_file(const std::string& path, const Group& h, const Group& n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open action file " + path);
  auto rows = read_rows(in, path);
  if (rows.size() != h.generators().size())
    throw ParseError(path + ": expected one automorphism per generator of the acting group (" +
                     std::to_string(h.generators().size()) + "), found " + std::to_string(rows.size()));
  try {
    return GroupAction(h, n, std::move(rows));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_action_file(const GroupAction& act, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  for (const auto& p : act.generator_images()) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << p[j];
    out << "\n";
  }
}

}  // namespace iyb
