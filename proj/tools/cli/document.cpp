#include "cli/document.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

namespace yoneda::cli {

using nlohmann::json;

SyntaxError::SyntaxError(std::size_t l, std::size_t c, const std::string& what)
    : CliError(parse_error, "syntax error at line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what),
      line(l),
      column(c) {}

ReferenceError::ReferenceError(const std::string& n, const std::string& where)
    : CliError(parse_error, (where.empty() ? std::string() : where + ": ") + "undefined reference '" + n + "'"), name(n) {}

ExitCode classify(const std::exception& e) {
  if (const auto* c = dynamic_cast<const CliError*>(&e)) return c->code();
  if (dynamic_cast<const DomainError*>(&e)) return domain_error;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e)) return validation_error;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return parse_error;
  return internal_error;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t to_size(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::size_t index(const json& j) {
  if (!j.is_number_unsigned()) throw std::invalid_argument("expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

Integer literal(std::string_view s) {
  try {
    return Integer::parse(s);
  } catch (const ValidationError&) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
}

Integer entry(const json& j) {
  if (j.is_number_unsigned()) return Integer::parse(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return literal(j.get<std::string>());
  throw std::invalid_argument("expected an integer entry, got " + j.dump());
}

IntMatrix rows_of(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of rows");
  const std::size_t r = j.size();
  const std::size_t c = r ? j[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw DimensionMismatch("matrix rows differ in length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = entry(j[i][k]);
  }
  return m;
}

// A rows × cols matrix; an empty list is accepted when either is zero.
IntMatrix shaped(const json& j, std::size_t rows, std::size_t cols) {
  if (j.is_null()) return IntMatrix(rows, cols);
  if (j.is_array() && j.empty() && (rows == 0 || cols == 0)) return IntMatrix(rows, cols);
  IntMatrix m = rows_of(j);
  if (m.rows() != rows || m.cols() != cols)
    throw DimensionMismatch("expected a " + std::to_string(rows) + "×" + std::to_string(cols) + " matrix, got " +
                            std::to_string(m.rows()) + "×" + std::to_string(m.cols()));
  return m;
}

std::vector<std::size_t> indices(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(index(x));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::pair<std::string, std::string> split_word(const std::string& s) {
  const auto sp = s.find(' ');
  if (sp == std::string::npos) return {s, {}};
  return {s.substr(0, sp), trim(std::string_view(s).substr(sp + 1))};
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw ReferenceError(name);
  return it->second;
}

}  // namespace

FpAbGroup parse_group_shorthand(std::string_view text) {
  std::vector<FpAbGroup> parts;
  std::string rest(text);
  std::size_t start = 0;
  while (true) {
    const auto plus = rest.find('+', start);
    const std::string term = trim(std::string_view(rest).substr(start, plus == std::string::npos ? plus : plus - start));
    if (term == "0") {
      parts.emplace_back();
    } else if (term == "Z") {
      parts.push_back(FpAbGroup::free(1));
    } else if (term.rfind("Z^", 0) == 0) {
      parts.push_back(FpAbGroup::free(to_size(term.substr(2))));
    } else if (term.rfind("Z/", 0) == 0) {
      parts.push_back(FpAbGroup::cyclic(literal(term.substr(2))));
    } else {
      throw std::invalid_argument("not a group: '" + std::string(text) + "'");
    }
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return parts.size() == 1 ? parts[0] : direct_sum_of(parts);
}

FpAbGroup InputDocument::group(const std::string& ref) const {
  if (auto it = groups.find(ref); it != groups.end()) return it->second;
  try {
    return parse_group_shorthand(ref);
  } catch (const std::invalid_argument&) {
    throw ReferenceError(ref);
  }
}

const IntMatrix& InputDocument::matrix(const std::string& name) const { return lookup(matrices, name); }
const FpAbHom& InputDocument::hom(const std::string& name) const { return lookup(homs, name); }
const ShortExactSeq& InputDocument::sequence(const std::string& name) const { return lookup(sequences, name); }
const GModule& InputDocument::module(const std::string& name) const { return lookup(modules, name); }
const AbPresheaf& InputDocument::presheaf(const std::string& name) const { return lookup(presheaves, name); }

FiniteGroup InputDocument::finite_group(const std::string& ref) const {
  if (auto it = finite_groups.find(ref); it != finite_groups.end()) return it->second;
  auto [word, arg] = split_word(ref);
  if (word == "cyclic" && !arg.empty()) return FiniteGroup::cyclic(to_size(arg));
  if (word == "symmetric" && !arg.empty()) return FiniteGroup::symmetric(to_size(arg));
  if (word == "trivial" && arg.empty()) return FiniteGroup::cyclic(1);
  throw ReferenceError(ref);
}

FinitePoset InputDocument::poset(const std::string& ref) const {
  if (auto it = posets.find(ref); it != posets.end()) return it->second;
  auto [word, arg] = split_word(ref);
  FinitePoset p;
  if (word == "chain" && !arg.empty())
    p = FinitePoset::chain(to_size(arg));
  else if (word == "sierpinski" && arg.empty())
    p = FinitePoset::sierpinski();
  else if (word == "bowtie" && arg.empty())
    p = FinitePoset::bowtie();
  else if (word == "point" && arg.empty())
    p = FinitePoset::chain(1);
  else
    throw ReferenceError(ref);
  if (p.size() > max_poset_size) throw DomainError("posets are limited to " + std::to_string(max_poset_size) + " elements");
  return p;
}

namespace {

const std::vector<std::string> sections{"matrices", "groups", "homs", "sequences", "finite_groups",
                                        "modules",  "posets", "presheaves"};

FpAbGroup build_group(const InputDocument&, const json& j) {
  if (j.is_string()) return parse_group_shorthand(j.get<std::string>());
  const std::size_t n = index(field(j, "gens"));
  if (!j.contains("relations")) return FpAbGroup::free(n);
  const json& rel = j.at("relations");
  return FpAbGroup::make(n, shaped(rel, rel.size(), n).transpose());
}

FpAbHom build_hom(const InputDocument& doc, const json& j) {
  FpAbGroup src = doc.group(field(j, "src").get<std::string>());
  FpAbGroup tgt = doc.group(field(j, "tgt").get<std::string>());
  IntMatrix m = shaped(j.contains("matrix") ? j.at("matrix") : json(), tgt.gens(), src.gens());
  return FpAbHom::make(std::move(src), std::move(tgt), std::move(m));
}

FiniteGroup build_finite_group(const InputDocument& doc, const json& j) {
  if (j.is_string()) return doc.finite_group(j.get<std::string>());
  if (j.contains("table")) {
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : j.at("table")) table.push_back(indices(row));
    return FiniteGroup::make(std::move(table));
  }
  if (j.contains("permutations")) {
    std::vector<std::vector<std::size_t>> gens;
    for (const auto& row : j.at("permutations")) gens.push_back(indices(row));
    return FiniteGroup::from_permutations(gens);
  }
  if (j.contains("product")) {
    const json& f = j.at("product");
    if (!f.is_array() || f.size() != 2) throw std::invalid_argument("product takes two groups");
    return FiniteGroup::product(doc.finite_group(f[0].get<std::string>()), doc.finite_group(f[1].get<std::string>()));
  }
  throw std::invalid_argument("expected 'table', 'permutations' or 'product'");
}

GModule build_module(const InputDocument& doc, const json& j) {
  FiniteGroup g = doc.finite_group(field(j, "group").get<std::string>());
  if (j.contains("regular")) return group_ring_module(g, index(j.at("regular")));
  const json& action = field(j, "action");
  if (action == "sign") return sign_module(g);
  FpAbGroup m = doc.group(field(j, "base").get<std::string>());
  if (action == "trivial") return trivial_module(g, m);
  if (action.is_object() && action.contains("character")) {
    std::vector<int> chi;
    for (const auto& x : action.at("character")) chi.push_back(x.get<int>());
    return character_module(g, m, chi);
  }
  if (!action.is_array() || action.size() != g.order())
    throw DimensionMismatch("module action needs one matrix per group element");
  std::vector<FpAbHom> maps;
  for (const auto& a : action) maps.push_back(FpAbHom::make(m, m, shaped(a, m.gens(), m.gens())));
  return GModule::make(std::move(g), std::move(m), std::move(maps));
}

FinitePoset build_poset(const InputDocument& doc, const json& j) {
  if (j.is_string()) return doc.poset(j.get<std::string>());
  FinitePoset p;
  if (j.contains("parent")) {
    p = FinitePoset::forest(indices(j.at("parent")));
  } else {
    const std::size_t n = index(field(j, "size"));
    if (n > max_poset_size) throw DomainError("posets are limited to " + std::to_string(max_poset_size) + " elements");
    std::vector<std::pair<std::size_t, std::size_t>> less;
    for (const auto& pr : j.contains("order") ? j.at("order") : json::array()) {
      auto v = indices(pr);
      if (v.size() != 2) throw std::invalid_argument("order pairs are [d, c] meaning d <= c");
      if (v[0] >= n || v[1] >= n) throw DomainError("order pair mentions an element out of range");
      less.emplace_back(v[0], v[1]);
    }
    p = FinitePoset::from_relations(n, less);
  }
  if (p.size() > max_poset_size) throw DomainError("posets are limited to " + std::to_string(max_poset_size) + " elements");
  return p;
}

AbPresheaf build_presheaf(const InputDocument& doc, const json& j) {
  FinitePoset p = doc.poset(field(j, "poset").get<std::string>());
  if (j.contains("free")) return free_presheaf(p, indices(j.at("free")));
  if (j.contains("constant")) return AbPresheaf::constant(p, doc.group(j.at("constant").get<std::string>()));
  const json& st = field(j, "stalks");
  if (!st.is_array() || st.size() != p.size()) throw DimensionMismatch("presheaf needs one stalk per element");
  std::vector<FpAbGroup> stalks;
  for (const auto& s : st) stalks.push_back(doc.group(s.get<std::string>()));
  AbPresheaf::Restrictions res;
  if (j.contains("restrictions"))
    for (const auto& r : j.at("restrictions")) {
      const std::size_t c = index(field(r, "from")), d = index(field(r, "to"));
      if (c >= p.size() || d >= p.size()) throw DomainError("restriction mentions an element out of range");
      IntMatrix m = shaped(r.contains("matrix") ? r.at("matrix") : json(), stalks[d].gens(), stalks[c].gens());
      res.emplace(std::pair{c, d}, FpAbHom::make(stalks[c], stalks[d], std::move(m)));
    }
  // Covering pairs left out carry the zero map.
  for (const auto& [d, c] : p.covers())
    if (!res.count({c, d})) res.emplace(std::pair{c, d}, FpAbHom::zero(stalks[c], stalks[d]));
  return AbPresheaf::make(p, std::move(stalks), res);
}

template <class T, class F>
void define(std::map<std::string, T>& into, const InputDocument& doc, const json& sec, const std::string& what, F build) {
  if (!sec.is_object()) throw CliError(parse_error, "section '" + what + "' must map names to definitions");
  for (const auto& [name, body] : sec.items()) {
    try {
      into.emplace(name, build(doc, body));
    } catch (const ReferenceError& e) {
      throw ReferenceError(e.name, what + " '" + name + "'");
    } catch (const json::exception& e) {
      throw CliError(parse_error, what + " '" + name + "': " + e.what());
    } catch (const std::exception& e) {
      throw CliError(classify(e), what + " '" + name + "': " + e.what());
    }
  }
}

}  // namespace

InputDocument parse(std::string_view text) {
  InputDocument doc;
  doc.source = json::object();
  if (trim(text).empty()) return doc;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < byte; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw SyntaxError(line, col, msg);
  }
  if (!j.is_object()) throw SyntaxError(1, 1, "the document must be an object of sections");
  for (const auto& [key, value] : j.items())
    if (std::find(sections.begin(), sections.end(), key) == sections.end())
      throw CliError(parse_error, "unknown section '" + key + "'");

  auto sec = [&](const char* name) { return j.contains(name) ? j.at(name) : json::object(); };
  define(doc.matrices, doc, sec("matrices"), "matrix", [](const InputDocument&, const json& b) { return rows_of(b); });
  define(doc.groups, doc, sec("groups"), "group", build_group);
  define(doc.homs, doc, sec("homs"), "hom", build_hom);
  define(doc.sequences, doc, sec("sequences"), "sequence", [](const InputDocument& d, const json& b) {
    return ShortExactSeq::make(d.hom(field(b, "i").get<std::string>()), d.hom(field(b, "p").get<std::string>()));
  });
  define(doc.finite_groups, doc, sec("finite_groups"), "finite group", build_finite_group);
  define(doc.modules, doc, sec("modules"), "module", build_module);
  define(doc.posets, doc, sec("posets"), "poset", build_poset);
  define(doc.presheaves, doc, sec("presheaves"), "presheaf", build_presheaf);
  doc.source = std::move(j);
  return doc;
}

std::string emit(const InputDocument& doc) { return doc.source.dump(2) + "\n"; }

}  // namespace yoneda::cli
