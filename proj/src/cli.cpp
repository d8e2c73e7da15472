#include "msect/cli.hpp"

#include "msect/plot.hpp"
#include "msect/sectioning.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace msect::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Integer parse_integer(const std::string& tok, std::string_view whole) {
  std::string digits = tok;
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  const std::size_t start = (!digits.empty() && digits[0] == '-') ? 1 : 0;
  if (digits.size() == start ||
      !std::all_of(digits.begin() + start, digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("bad number '" + tok + "' in vector '" + std::string(whole) + "'");
  return Integer(digits, 10);
}

json vector_json(const IntVector& v) {
  json arr = json::array();
  for (const auto& x : v.coords()) arr.push_back(x.get_str());
  return arr;
}

json sequence_json(const std::vector<IntVector>& seq) {
  json arr = json::array();
  for (const auto& v : seq) arr.push_back(vector_json(v));
  return arr;
}

IntVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("vector must be a JSON array");
  std::vector<Integer> coords;
  for (const auto& x : j) {
    if (x.is_string()) {
      coords.push_back(parse_integer(x.get<std::string>(), x.get<std::string>()));
    } else if (x.is_number_integer()) {
      coords.emplace_back(std::to_string(x.get<long long>()), 10);
    } else {
      throw ParseError("vector entries must be integer strings");
    }
  }
  if (coords.size() < 2) throw ParseError("vector needs at least two entries");
  return IntVector(std::move(coords));
}

std::vector<IntVector> sequence_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("sequence must be a JSON array");
  std::vector<IntVector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

std::string join(const std::vector<IntVector>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ' ';
    s += seq[i].str();
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A sequence to check, with the endpoint it must reach (if known).
struct Claim {
  std::string label;
  std::vector<IntVector> vectors;
  std::optional<IntVector> expected_end;
};

// Text lists give one claim; JSON reports give one per stored sequence.
std::vector<Claim> load_claims(const std::string& text) {
  const std::string body = trim(text);
  if (body.empty() || body[0] != '{') return {{"sequence", parse_vector_list(text), std::nullopt}};

  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  std::optional<IntVector> b;
  if (doc.contains("b") && !doc["b"].is_null()) b = vector_from_json(doc["b"]);

  std::vector<Claim> claims;
  if (doc.contains("sequence")) claims.push_back({"sequence", sequence_from_json(doc["sequence"]), std::nullopt});
  if (doc.contains("sequences")) {
    std::size_t i = 0;
    for (const auto& s : doc["sequences"]) {
      auto vecs = sequence_from_json(s);
      std::optional<IntVector> end = b;
      // Admitted antiparallel witnesses end at -b.
      if (b && !vecs.empty() && primitive(vecs.back()) == -primitive(*b)) end = -*b;
      claims.push_back({"sequences[" + std::to_string(i++) + "]", std::move(vecs), end});
    }
  }
  if (doc.contains("rejected_antiparallel")) {
    std::size_t i = 0;
    for (const auto& r : doc["rejected_antiparallel"]) {
      std::optional<IntVector> end;
      if (b) end = -*b;
      claims.push_back({"rejected_antiparallel[" + std::to_string(i++) + "]",
                        sequence_from_json(r.at("sequence")), end});
    }
  }
  return claims;
}

struct Common {
  bool json_out = false;
  std::uint64_t seed = Budget{}.seed;
  std::uint64_t budget = Budget{}.work;
  std::size_t max_divisors = Budget{}.max_divisors;

  Budget make_budget() const { return {budget, max_divisors, seed}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_out, "Emit JSON");
  cmd->add_option("--seed", c.seed, "Seed for the randomized factoring");
  cmd->add_option("--budget", c.budget, "Work units allowed for factoring");
  cmd->add_option("--max-divisors", c.max_divisors, "Cap on enumerated divisors");
}

int exit_for(Status s) {
  switch (s) {
    case Status::Sectable:
      return kExitYes;
    case Status::NotSectable:
      return kExitNo;
    default:
      return kExitUndecided;
  }
}

int cmd_sectable(unsigned m, const IntVector& a, const IntVector& b, const Common& c,
                 bool allow_antiparallel, std::ostream& out) {
  MsectOptions opts;
  opts.budget = c.make_budget();
  opts.allow_antiparallel = allow_antiparallel;
  const SectorDecision d = decide_msect(a, b, m, opts);

  if (c.json_out) {
    json j;
    j["status"] = std::string(to_string(d.status));
    j["m"] = m;
    j["a"] = vector_json(a);
    j["b"] = vector_json(b);
    j["p"] = d.gram.p.get_str();
    j["na"] = d.gram.na.get_str();
    j["nb"] = d.gram.nb.get_str();
    j["s2"] = d.gram.s2.get_str();
    if (d.polynomial) {
      json coeffs = json::array();
      for (const auto& x : d.polynomial->coeffs) coeffs.push_back(x.get_str());
      j["polynomial"] = coeffs;
    } else {
      j["polynomial"] = nullptr;
    }
    j["roots"] = json::array();
    for (const auto& t : d.roots) j["roots"].push_back(t.get_str());
    j["sequences"] = json::array();
    for (const auto& s : d.sequences) j["sequences"].push_back(sequence_json(s.vectors));
    j["rejected_antiparallel"] = json::array();
    for (const auto& r : d.rejected_antiparallel)
      j["rejected_antiparallel"].push_back({{"root", r.root.get_str()}, {"sequence", sequence_json(r.sequence.vectors)}});
    j["budget_exhausted"] = d.budget_exhausted;
    if (d.cosine_chain) {
      json cs = json::array();
      for (const auto& q : d.cosine_chain->cosines) cs.push_back(q.get_str());
      j["cosine_chain"] = cs;
    }
    if (!d.note.empty()) j["note"] = d.note;
    out << j.dump(2) << '\n';
    return exit_for(d.status);
  }

  out << "status: " << to_string(d.status) << '\n';
  out << "m: " << m << '\n';
  out << "p: " << d.gram.p << "  na: " << d.gram.na << "  nb: " << d.gram.nb << "  s2: " << d.gram.s2
      << '\n';
  if (!d.note.empty()) out << "note: " << d.note << '\n';
  if (d.polynomial) out << "polynomial: " << d.polynomial->str() << '\n';
  if (d.cosine_chain) {
    out << "cosine chain:";
    for (const auto& q : d.cosine_chain->cosines) out << ' ' << q;
    out << '\n';
  }
  if (d.polynomial && d.status != Status::Indeterminate) {
    out << "roots:";
    if (d.roots.empty()) out << " none";
    for (const auto& t : d.roots) out << ' ' << t;
    out << '\n';
  }
  for (const auto& s : d.sequences) {
    out << "sequence";
    if (s.root) out << " (root " << *s.root << ")";
    out << ": " << join(s.vectors) << '\n';
  }
  for (const auto& r : d.rejected_antiparallel)
    out << "rejected antiparallel (root " << r.root << "): " << join(r.sequence.vectors) << '\n';
  return exit_for(d.status);
}

int cmd_bisector(const IntVector& a, const IntVector& b, const Common& c, std::ostream& out) {
  if (dependent(a, b)) {
    if (c.json_out) {
      out << json{{"status", "unsupported"}, {"vector", nullptr}}.dump(2) << '\n';
    } else {
      out << "status: unsupported\nnote: vectors are linearly dependent\n";
    }
    return kExitUndecided;
  }
  const BisectorResult r = bisector_vector(a, b, c.make_budget());
  if (c.json_out) {
    json j{{"status", std::string(to_string(r.status))}};
    j["vector"] = r.vector ? vector_json(*r.vector) : json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << "status: " << to_string(r.status) << '\n';
    if (r.vector) out << "bisector: " << r.vector->str() << '\n';
  }
  return exit_for(r.status);
}

int cmd_pow2(unsigned e, const IntVector& a, const IntVector& b, const Common& c, std::ostream& out) {
  const CosineChain chain = pow2_sectable(a, b, e);
  if (c.json_out) {
    json cs = json::array();
    for (const auto& q : chain.cosines) cs.push_back(q.get_str());
    out << json{{"holds", chain.holds}, {"e", e}, {"cosines", cs}}.dump(2) << '\n';
  } else {
    out << (chain.holds ? "true" : "false") << '\n';
    out << "cosine chain:";
    if (chain.cosines.empty()) out << " none";
    for (std::size_t i = 0; i < chain.cosines.size(); ++i) out << (i ? ", " : " ") << chain.cosines[i];
    out << '\n';
  }
  return chain.holds ? kExitYes : kExitNo;
}

int cmd_extend(unsigned k, const IntVector& c0, const IntVector& c1, const Common& c, std::ostream& out) {
  const EquisectorSequence seq = extend_sequence(generate_sequence(c0, c1, 1), k);
  const VerificationReport rep = verify_sequence(seq.vectors);
  if (c.json_out) {
    out << json{{"sequence", sequence_json(seq.vectors)}, {"valid", rep.valid}}.dump(2) << '\n';
  } else {
    for (const auto& v : seq.vectors) out << v.str() << '\n';
  }
  return rep.valid ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& path, const std::optional<IntVector>& expect, const Common& c,
               std::ostream& out) {
  std::vector<Claim> claims = load_claims(read_file(path));
  if (claims.empty()) throw ParseError("no sequences found in " + path);
  bool all_valid = true;
  json results = json::array();
  for (auto& claim : claims) {
    if (expect) claim.expected_end = expect;
    const VerificationReport rep = verify_sequence(claim.vectors, claim.expected_end);
    all_valid = all_valid && rep.valid;
    if (c.json_out) {
      json r{{"label", claim.label}, {"valid", rep.valid}};
      if (rep.failure_index) {
        r["failure_index"] = *rep.failure_index;
        r["reason"] = rep.reason;
      }
      results.push_back(r);
    } else if (rep.valid) {
      out << claim.label << ": valid (" << claim.vectors.size() << " vectors)\n";
    } else {
      out << claim.label << ": invalid at index " << *rep.failure_index << ": " << rep.reason << '\n';
    }
  }
  if (c.json_out) out << json{{"valid", all_valid}, {"results", results}}.dump(2) << '\n';
  return all_valid ? kExitYes : kExitNo;
}

}  // namespace

IntVector parse_vector(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']')))
    s = trim(std::string_view(s).substr(1, s.size() - 2));
  if (s.empty()) throw ParseError("empty vector literal");

  std::vector<Rational> entries;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    const auto slash = tok.find('/');
    if (slash == std::string::npos) {
      entries.emplace_back(parse_integer(tok, text));
    } else {
      const Integer num = parse_integer(trim(tok.substr(0, slash)), text);
      const Integer den = parse_integer(trim(tok.substr(slash + 1)), text);
      if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
      Rational q(num, den);
      q.canonicalize();
      entries.push_back(q);
    }
  }
  if (s.back() == ',') throw ParseError("trailing comma in '" + std::string(text) + "'");
  if (entries.size() < 2) throw ParseError("vector '" + std::string(text) + "' needs at least two entries");

  Integer l = 1;
  for (const auto& q : entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> coords;
  coords.reserve(entries.size());
  for (const auto& q : entries) coords.emplace_back(q.get_num() * (l / q.get_den()));
  IntVector v(std::move(coords));
  if (v.is_zero()) throw ParseError("vector '" + std::string(text) + "' is zero");
  return v;
}

std::vector<IntVector> parse_vector_list(std::string_view text) {
  std::vector<IntVector> out;
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(parse_vector(line));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact angle multisection over the integers", "msect"};
  app.require_subcommand(1);

  Common common;
  unsigned m = 0, e = 0, k = 0;
  std::vector<std::string> pair;
  bool allow_antiparallel = false;

  auto* sectable = app.add_subcommand("sectable", "Decide m-sectability and build equisector sequences");
  sectable->add_option("-m", m, "Number of equal parts")->required()->check(CLI::Range(2u, 1u << 16));
  sectable->add_option("vectors", pair, "Vectors a and b")->required()->expected(2);
  sectable->add_flag("--allow-antiparallel", allow_antiparallel, "Accept sequences ending at -b");
  add_common(sectable, common);

  auto* bisector = app.add_subcommand("bisector", "Integer bisector of the angle between a and b");
  bisector->add_option("vectors", pair, "Vectors a and b")->required()->expected(2);
  add_common(bisector, common);

  auto* pow2 = app.add_subcommand("pow2", "Decide 2^e-sectability through the cosine chain");
  pow2->add_option("-e", e, "Exponent e >= 1")->required()->check(CLI::Range(1u, 64u));
  pow2->add_option("vectors", pair, "Vectors a and b")->required()->expected(2);
  add_common(pow2, common);

  auto* extend = app.add_subcommand("extend", "Extend c0, c1 by k reflection steps");
  extend->add_option("-k", k, "Vectors to append")->required()->check(CLI::Range(0u, 100000u));
  extend->add_option("vectors", pair, "Vectors c0 and c1")->required()->expected(2);
  add_common(extend, common);

  std::string verify_path;
  std::string expect_text;
  auto* verify = app.add_subcommand("verify", "Verify a sequence file or a JSON report");
  verify->add_option("file", verify_path, "One vector per line, or JSON from --json output")->required();
  verify->add_option("--expect", expect_text, "Endpoint the sequence must reach");
  add_common(verify, common);

  std::string out_path, plot_file;
  std::vector<std::string> plot_vectors;
  int width = 640, height = 640;
  double scale = 0;
  bool no_labels = false;
  auto* plot = app.add_subcommand("plot", "Render a 2D sequence of lines as SVG");
  plot->add_option("vectors", plot_vectors, "Sequence vectors");
  plot->add_option("--file", plot_file, "Read the sequence from a file (text or JSON)");
  plot->add_option("--out", out_path, "Write SVG here instead of stdout");
  plot->add_option("--width", width)->check(CLI::PositiveNumber);
  plot->add_option("--height", height)->check(CLI::PositiveNumber);
  plot->add_option("--scale", scale, "Lattice units per pixel for point markers");
  plot->add_flag("--no-labels", no_labels);

  try {
    // Bracketed vectors are passed on in parenthesized form.
    std::vector<std::string> reversed;
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      std::string arg = *it;
      if (arg.size() >= 2 && arg.front() == '[' && arg.back() == ']') {
        arg.front() = '(';
        arg.back() = ')';
      }
      reversed.push_back(std::move(arg));
    }
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (sectable->parsed())
      return cmd_sectable(m, parse_vector(pair[0]), parse_vector(pair[1]), common, allow_antiparallel, out);
    if (bisector->parsed()) return cmd_bisector(parse_vector(pair[0]), parse_vector(pair[1]), common, out);
    if (pow2->parsed()) return cmd_pow2(e, parse_vector(pair[0]), parse_vector(pair[1]), common, out);
    if (extend->parsed()) return cmd_extend(k, parse_vector(pair[0]), parse_vector(pair[1]), common, out);
    if (verify->parsed()) {
      std::optional<IntVector> expect;
      if (!expect_text.empty()) expect = parse_vector(expect_text);
      return cmd_verify(verify_path, expect, common, out);
    }
    if (plot->parsed()) {
      PlotSpec spec;
      if (!plot_file.empty()) {
        const auto claims = load_claims(read_file(plot_file));
        if (claims.empty()) throw ParseError("no sequence in " + plot_file);
        spec.sequence = claims.front().vectors;
      }
      for (const auto& t : plot_vectors) spec.sequence.push_back(parse_vector(t));
      if (spec.sequence.empty()) throw ParseError("plot needs vectors or --file");
      for (const auto& v : spec.sequence)
        if (v.dim() != 2) throw ParseError("plot renders 2D sequences only; " + v.str() + " is " + std::to_string(v.dim()) + "D");
      spec.width = width;
      spec.height = height;
      spec.scale = scale;
      spec.labels = !no_labels;
      const std::string svg = render_svg(spec);
      if (out_path.empty()) {
        out << svg;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ParseError("cannot write " + out_path);
        f << svg;
      }
      return kExitYes;
    }
  } catch (const ParseError& e) {
    err << "msect: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "msect: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "msect: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace msect::cli
