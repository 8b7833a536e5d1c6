#include "iyb/certificate.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "iyb/error.hpp"

namespace iyb {

namespace {

using nlohmann::json;

json provenance_json(const Provenance& prov) {
  json p{{"builder", prov.builder}, {"params", prov.params}};
  p["seed"] = prov.seed ? json(*prov.seed) : json(nullptr);
  return p;
}

json equivariance_json(const GroupAction& act) {
  return json{{"actor", act.actor().descriptor()}, {"generators", act.generator_images()}};
}

std::vector<Matrix> matrices_at(const json& j) { return j.get<std::vector<Matrix>>(); }

}  // namespace

json structure_certificate(const IYBStructure& s, const Provenance& prov, u64 modulus) {
  const auto& inv = s.module.invariants();
  if (modulus == 0) {
    modulus = 1;
    for (u64 m : inv) modulus = std::lcm(modulus, m);
  }
  json c;
  c["format"] = kCertificateFormat;
  c["kind"] = "module-structure";
  c["group"] = s.group().descriptor();
  c["modulus"] = modulus;
  c["module"] = json{{"invariants", inv}, {"generator_actions", s.module.generator_actions()}};
  c["cocycle"] = json{{"width", s.module.rank()}, {"images", s.cocycle}};
  if (s.equivariance) {
    json e = equivariance_json(s.equivariance->action);
    e["module_actions"] = s.equivariance->module_actions;
    c["equivariance"] = std::move(e);
  } else {
    c["equivariance"] = nullptr;
  }
  c["provenance"] = provenance_json(prov);
  return c;
}

json ideal_certificate(const GroupRing& r, const HowellBasis& ideal, const GroupAction* action, const Provenance& prov) {
  json c;
  c["format"] = kCertificateFormat;
  c["kind"] = "ideal-complement";
  c["group"] = r.group().descriptor();
  c["modulus"] = r.modulus();
  c["ideal"] = json{{"howell_rows", ideal.rows()}};
  c["equivariance"] = action ? equivariance_json(*action) : json(nullptr);
  c["provenance"] = provenance_json(prov);
  return c;
}

std::string canonical_text(const json& cert) { return cert.dump() + "\n"; }

void write_certificate(const json& cert, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << canonical_text(cert);
  if (!out) throw ParseError("write failed: " + path);
}

json parse_certificate(const std::string& text) {
  try {
    json c = json::parse(text);
    if (!c.is_object() || c.value("format", "") != kCertificateFormat)
      throw ParseError("not an " + std::string(kCertificateFormat) + " certificate");
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

json read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_certificate(ss.str());
}

CertificateCheck verify_certificate(const json& c, const VerifyOptions& opt) {
  CertificateCheck out;
  Group g;
  std::optional<GroupAction> action;
  try {
    out.kind = c.at("kind").get<std::string>();
    g = group_from_descriptor(c.at("group"));
    const json& e = c.at("equivariance");
    if (!e.is_null()) {
      Group a = group_from_descriptor(e.at("actor"));
      auto perms = e.at("generators").get<std::vector<Perm>>();
      try {
        action.emplace(a, g, std::move(perms));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        out.report.fail("equivariance", std::string("group action: ") + err.what());
        return out;
      }
    }

    if (out.kind == "module-structure") {
      const json& m = c.at("module");
      auto inv = m.at("invariants").get<std::vector<u64>>();
      std::optional<GModule> mod;
      try {
        mod.emplace(g, inv, matrices_at(m.at("generator_actions")));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(std::string("module: ") + err.what());
      }
      const json& co = c.at("cocycle");
      if (co.at("width").get<std::size_t>() != inv.size()) throw ParseError("cocycle width does not match the module rank");
      IYBStructure s{*mod, co.at("images").get<std::vector<u64>>(), std::nullopt};
      if (s.cocycle.size() != g.order() * inv.size()) throw ParseError("cocycle table has the wrong length");
      if (action) {
        auto mats = matrices_at(e.at("module_actions"));
        if (mats.size() != action->actor().generators().size())
          throw ParseError("equivariance: one module matrix per generator of the acting group required");
        for (const auto& mat : mats) {
          if (mat.size() != inv.size()) throw ParseError("equivariance: module matrix has the wrong shape");
          for (const auto& row : mat)
            if (row.size() != inv.size()) throw ParseError("equivariance: module matrix has the wrong shape");
        }
        s.equivariance = Equivariance{*action, std::move(mats)};
      }
      out.report = verify_structure(s, opt);
      out.structure = std::move(s);
      return out;
    }

    if (out.kind == "ideal-complement") {
      u64 mod = c.at("modulus").get<u64>();
      if (mod < 2) throw ParseError("modulus must be at least 2");
      auto rows = c.at("ideal").at("howell_rows").get<std::vector<Vec>>();
      for (const auto& row : rows)
        if (row.size() != g.order()) throw ParseError("ideal row length differs from the group order");
      GroupRing r(g, mod);
      HowellBasis ideal = r.span(rows);
      if (ideal.rows() != rows) return out.report.fail("ideal", "rows are not in canonical Howell form"), out;
      if (!r.omega(1).contains_all(ideal)) return out.report.fail("ideal", "not inside omega"), out;
      if (!r.is_left_ideal(ideal)) return out.report.fail("ideal", "not a left ideal"), out;
      out.transversal = verify_transversal(r, ideal, g.order() <= 512);
      if (!out.transversal->ok) return out.report.fail("transversal", out.transversal->witness), out;
      out.report.notes.push_back("transversal: index " + out.transversal->index.str() + ", " +
                                 std::to_string(out.transversal->pairwise_tests) + " pairwise tests");
      if (action && !r.is_stable(ideal, action->generator_images()))
        return out.report.fail("equivariance", "ideal is not stable under the acting group"), out;
      IYBStructure s = ideal_to_structure(r, ideal, action ? &*action : nullptr);
      out.report.merge(verify_structure(s, opt));
      out.structure = std::move(s);
      return out;
    }
    throw ParseError("unknown certificate kind '" + out.kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace iyb
