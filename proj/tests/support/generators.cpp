#include "generators.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "forge/namespaces.hpp"

namespace forge::testing {

using rdf::Term;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

const std::vector<std::string> kPieces = {
    "a", "b", "z", "0", "42", " ", ",", "\"", "\\", "\n", "\t", "\r", "'", "#", ".",
    ";", ":", "<", ">", "é", "ção", "→", "\xF0\x9F\x9A\xB2", "\x01", "|", "---", "@en", "^^"};

}  // namespace

std::string nasty_text(Rng& rng, std::size_t max_len) {
  std::string out;
  std::size_t n = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i) out += pick(rng, kPieces);
  return out;
}

std::string adversarial_cell(Rng& rng) {
  static const std::vector<std::string> specials = {
      "", ",", "\"", "\"\"", "a,\"b", "line1\nline2", "cr\r\nlf", "---", "\n---\n",
      " lead", "trail ", "x|y", "\\", "é,ü", "=1+1", ",,,", "\"quoted\""};
  if (coin(rng, 0.4)) return pick(rng, specials);
  return nasty_text(rng, 8);
}

rdf::Graph random_graph(Rng& rng, std::size_t max_triples) {
  static const std::vector<std::string> namespaces = {
      "http://ex.org/a#", "http://ex.org/b/", std::string(ns::kQoeM), "urn:x:"};
  static const std::vector<std::string> locals = {"s", "p", "q", "Thing_1", "with-dash",
                                                  "dot.inside", "trailing.", "9lives",
                                                  "", "a/b", "%41"};
  static const std::vector<std::string> langs = {"en", "pt-BR", "de-1996"};
  static const std::vector<std::string> datatypes = {
      ns::iri(ns::kXsd, "integer"), ns::iri(ns::kXsd, "decimal"), ns::iri(ns::kXsd, "string"),
      ns::iri(ns::kXsd, "dateTime"), "http://ex.org/a#custom"};

  std::size_t target = uniform(rng, 0, max_triples);
  std::size_t pool = std::max<std::size_t>(3, target / 3);
  std::vector<Term> nodes, preds;
  for (std::size_t i = 0; i < pool; ++i) {
    if (coin(rng, 0.25)) {
      nodes.push_back(Term::blank("n" + std::to_string(i)));
    } else {
      nodes.push_back(Term::iri(pick(rng, namespaces) + pick(rng, locals) + std::to_string(i)));
    }
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(2, pool / 4); ++i) {
    preds.push_back(Term::iri(pick(rng, namespaces) + "p" + std::to_string(i)));
  }
  preds.push_back(rdf::rdf_type());

  rdf::Graph g;
  if (coin(rng)) g.set_prefix("ex", namespaces[0]);
  if (coin(rng)) g.set_prefix("exb", namespaces[1]);
  if (coin(rng)) g.set_prefix("qoe-m", namespaces[2]);
  for (std::size_t guard = 0; g.size() < target && guard < target * 4; ++guard) {
    Term s = pick(rng, nodes);
    Term p = pick(rng, preds);
    Term o = Term::iri("http://ex.org/placeholder");
    switch (uniform(rng, 0, 4)) {
      case 0:
      case 1: o = pick(rng, nodes); break;
      case 2: o = Term::literal(nasty_text(rng)); break;
      case 3: o = Term::literal(std::to_string(uniform(rng, 0, 999)), pick(rng, datatypes)); break;
      default: o = Term::literal(nasty_text(rng, 4), "", pick(rng, langs)); break;
    }
    g.add(s, p, o);
  }
  return g;
}

rdf::Graph relabel_blanks(const rdf::Graph& g, Rng& rng) {
  std::map<std::string, std::string> names;
  std::size_t salt = uniform(rng, 0, 1u << 20);
  auto map_term = [&](const Term& t) {
    if (!t.is_blank()) return t;
    auto [it, fresh] = names.try_emplace(t.value(), "");
    if (fresh) it->second = "r" + std::to_string(salt) + "x" + std::to_string(names.size());
    return Term::blank(it->second);
  };
  std::vector<rdf::Triple> triples(g.begin(), g.end());
  std::shuffle(triples.begin(), triples.end(), rng);
  rdf::Graph out;
  for (const auto& [label, n] : g.prefixes()) out.set_prefix(label, n);
  for (const auto& t : triples) out.add(map_term(t.subject), t.predicate, map_term(t.object));
  return out;
}

std::vector<rdf::TriplePattern> random_patterns(Rng& rng, const rdf::Graph& g) {
  std::vector<rdf::Triple> triples(g.begin(), g.end());
  std::size_t n = uniform(rng, 1, 4);
  auto slot = [&](const Term* from) -> rdf::PatternSlot {
    if (from == nullptr || coin(rng, 0.55)) return rdf::var("v" + std::to_string(uniform(rng, 0, 3)));
    return *from;
  };
  std::vector<rdf::TriplePattern> out;
  for (std::size_t i = 0; i < n; ++i) {
    const rdf::Triple* t = triples.empty() ? nullptr : &pick(rng, triples);
    if (t && coin(rng, 0.1)) {
      // A constant absent from the graph.
      out.push_back({slot(&t->subject), Term::iri("http://ex.org/absent"), slot(&t->object)});
      continue;
    }
    out.push_back({slot(t ? &t->subject : nullptr), slot(t ? &t->predicate : nullptr),
                   slot(t ? &t->object : nullptr)});
  }
  return out;
}

ccsv::CcsvDocument random_document(Rng& rng, std::size_t max_extra, std::size_t max_rows) {
  const std::string base = "http://ex.org/c#";
  const std::string cls = base + "K" + std::to_string(uniform(rng, 0, 20));
  std::size_t extra = uniform(rng, 0, max_extra);
  std::size_t width = extra + 1;

  std::vector<std::size_t> order(width);
  for (std::size_t i = 0; i < width; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);

  ccsv::DocumentParts parts;
  parts.dataset_iri = "http://ex.org/d/" + std::to_string(uniform(rng, 0, 1000));
  parts.records_class = cls;
  parts.header.resize(width);
  std::set<std::string> names;
  auto fresh_name = [&](std::size_t i) {
    std::string name = coin(rng, 0.3) ? adversarial_cell(rng) : "col" + std::to_string(i);
    if (name.empty() || !names.insert(name).second) {
      name = "col" + std::to_string(i) + "_" + std::to_string(names.size());
      names.insert(name);
    }
    return name;
  };
  for (std::size_t k = 0; k < width; ++k) {
    std::size_t index = order[k];
    std::string name = fresh_name(index);
    parts.header[index - 1] = name;
    ccsv::ColumnBinding b;
    b.index = index;
    b.name = name;
    if (k == 0) {
      b.role = ccsv::IdentifierRole{cls};
    } else {
      switch (uniform(rng, 0, 3)) {
        case 0:
          continue;  // unbound column
        case 1:
          b.role = ccsv::ReferenceRole{base + "K" + std::to_string(uniform(rng, 0, 20)),
                                       coin(rng) ? std::optional(base + "link" + std::to_string(k))
                                                 : std::nullopt};
          break;
        default:
          b.role = ccsv::AttributeRole{base + "p" + std::to_string(k)};
          if (coin(rng, 0.3)) b.datatype = ns::iri(ns::kXsd, "decimal");
          else if (coin(rng, 0.2)) b.language = "pt-BR";
          break;
      }
      if (coin(rng, 0.2)) b.value_separator = coin(rng) ? "|" : ";";
    }
    parts.bindings.push_back(std::move(b));
  }
  std::size_t rows = uniform(rng, 0, max_rows);
  for (std::size_t r = 0; r < rows; ++r) {
    csv::Row row(width);
    for (auto& cell : row) cell = adversarial_cell(rng);
    parts.rows.push_back(std::move(row));
  }
  if (coin(rng)) {
    const Term study = Term::iri("http://ex.org/study/" + std::to_string(uniform(rng, 0, 9)));
    parts.metadata.add(study, rdf::rdf_type(), rdf::iri(ns::kHasco, "Study"));
    parts.metadata.add(study, rdf::iri(ns::kRdfs, "label"), Term::literal(nasty_text(rng)));
    parts.metadata.add(Term::blank("note"), rdf::iri(ns::kRdfs, "comment"), study);
  }
  return ccsv::CcsvDocument::build(std::move(parts));
}

DiscoveryCase random_discovery_case(Rng& rng, bool force_chain) {
  const std::string base = "http://example.org/city#";
  std::size_t n = force_chain ? uniform(rng, 4, 10) : uniform(rng, 1, 10);
  DiscoveryCase c;
  for (std::size_t i = 0; i < n; ++i) c.classes.push_back(base + "C" + std::to_string(i));

  rdf::Graph onto;
  const Term owl_class = rdf::iri(ns::kOwl, "Class");
  const Term sub = rdf::iri(ns::kRdfs, "subClassOf");
  for (const auto& cls : c.classes) onto.add(Term::iri(cls), rdf::rdf_type(), owl_class);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      bool edge = force_chain ? (i <= 3 ? j == i - 1 : j >= 4 && coin(rng, 0.25))
                              : coin(rng, 0.25);
      if (edge) onto.add(Term::iri(c.classes[i]), sub, Term::iri(c.classes[j]));
    }
  }
  std::vector<rdf::Graph> extras{onto};
  std::vector<std::string> domains{base};
  c.reg = vocab::load_registry(extras, domains);

  std::vector<std::string> records;
  if (force_chain) {
    records.push_back(c.classes[3]);
  } else {
    std::vector<std::string> shuffled = c.classes;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.resize(std::min<std::size_t>(uniform(rng, 0, 4), shuffled.size()));
    records = shuffled;
  }
  for (const auto& cls : records) {
    ccsv::DocumentParts parts;
    parts.dataset_iri = "http://example.org/bundle/" + ns::local_name(cls);
    parts.records_class = cls;
    parts.bindings.push_back({1, "id", ccsv::IdentifierRole{cls}, {}, {}, {}});
    parts.header = {"id"};
    for (std::size_t r = 0; r < uniform(rng, 0, 2); ++r) parts.rows.push_back({"r" + std::to_string(r)});
    c.bundle.documents.push_back(ccsv::CcsvDocument::build(std::move(parts)));
  }

  auto random_class = [&] {
    if (coin(rng, 0.08)) return base + "Ghost";
    return pick(rng, c.classes);
  };
  std::size_t m = uniform(rng, force_chain ? 1 : 0, 5);
  for (std::size_t i = 0; i < m; ++i) {
    vocab::IndicatorDef def;
    def.iri = "http://example.org/ind#I" + std::to_string(i);
    def.label = "I" + std::to_string(i);
    std::size_t specs = uniform(rng, 1, 3);
    for (std::size_t s = 0; s < specs; ++s) {
      std::string node = def.iri + "-S" + std::to_string(s);
      std::string cls = (force_chain && i == 0) ? c.classes[0] : random_class();
      if (s == 0 || coin(rng, 0.3)) {
        def.measures.push_back({node, cls, vocab::AggregateFunction::kCount, std::nullopt});
      } else {
        def.dimensions.push_back({node, cls});
      }
    }
    c.catalog.push_back(std::move(def));
  }
  return c;
}

namespace {

std::string qoe_m(std::string_view local) { return ns::iri(ns::kQoeM, local); }

std::string random_id(Rng& rng, std::string_view prefix, std::size_t i) {
  static const std::vector<std::string> tails = {"", "", "", " x", "/é", "%20", "-a.b", "?q=1"};
  return std::string(prefix) + std::to_string(i) + pick(rng, tails);
}

std::string decimal(Rng& rng) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f",
                std::uniform_real_distribution<double>(-90, 90)(rng));
  return buf;
}

struct ColumnSpec {
  std::string name;
  ingest::ColumnMapping mapping;
  std::function<std::string(std::size_t row)> cell;
};

RawDataset assemble(Rng& rng, const std::string& cls, std::vector<ColumnSpec> cols,
                    std::size_t rows) {
  if (coin(rng, 0.3)) {
    cols.push_back({"notes", {"", ccsv::AttributeRole{}, {}, {}, {}},
                    [&rng](std::size_t) { return adversarial_cell(rng); }});
  }
  std::shuffle(cols.begin(), cols.end(), rng);
  RawDataset d;
  d.mapping.records_class = cls;
  csv::Row header;
  for (const auto& c : cols) {
    header.push_back(c.name);
    if (c.name == "notes") continue;  // present in the file, not mapped
    auto m = c.mapping;
    m.column = c.name;
    d.mapping.columns.push_back(std::move(m));
  }
  std::vector<csv::Row> table{header};
  for (std::size_t r = 0; r < rows; ++r) {
    csv::Row row;
    for (const auto& c : cols) row.push_back(c.cell(r));
    table.push_back(std::move(row));
  }
  d.csv = csv::write(table);
  return d;
}

std::string maybe_empty(Rng& rng, std::string v, double p = 0.15) {
  return coin(rng, p) ? std::string() : std::move(v);
}

}  // namespace

std::vector<RawDataset> random_datasets(Rng& rng, std::size_t max_instances) {
  std::size_t stations = uniform(rng, 1, std::max<std::size_t>(1, max_instances / 3));
  std::size_t users = coin(rng) ? uniform(rng, 0, max_instances / 5) : 0;
  std::size_t left = max_instances - std::min(max_instances, stations + users);
  std::size_t trips = uniform(rng, 0, left);

  std::vector<std::string> station_ids, user_ids;
  for (std::size_t i = 0; i < stations; ++i) station_ids.push_back(random_id(rng, "s", i));
  for (std::size_t i = 0; i < users; ++i) user_ids.push_back(random_id(rng, "u", i));

  std::vector<RawDataset> out;
  const auto label_name = coin(rng) ? "label" : "name";
  const bool multi_label = coin(rng, 0.4);
  std::vector<ColumnSpec> station_cols = {
      {"id", {"", ccsv::IdentifierRole{qoe_m("Bicycle-Share_Station")}, {}, {}, {}},
       [=](std::size_t r) { return station_ids[r]; }},
      {label_name,
       {"", ccsv::AttributeRole{ns::iri(ns::kRdfs, "label")},
        multi_label ? std::optional<std::string>("|") : std::nullopt, {}, {}},
       [&rng, multi_label](std::size_t) {
         if (!multi_label) return maybe_empty(rng, "St " + nasty_text(rng, 3) + "!");
         std::vector<std::string> vals;
         for (std::size_t k = 0; k < uniform(rng, 0, 3); ++k) {
           vals.push_back("n" + std::to_string(k) + nasty_text(rng, 3));
         }
         return ccsv::join_values(vals, "|");
       }},
      {"lat", {"", ccsv::AttributeRole{qoe_m("lat")}, {}, ns::iri(ns::kXsd, "decimal"), {}},
       [&rng](std::size_t) { return maybe_empty(rng, decimal(rng)); }},
      {"long", {"", ccsv::AttributeRole{qoe_m("long")}, {}, ns::iri(ns::kXsd, "decimal"), {}},
       [&rng](std::size_t) { return maybe_empty(rng, decimal(rng)); }},
  };
  out.push_back(assemble(rng, qoe_m("Bicycle-Share_Station"), std::move(station_cols), stations));

  if (!user_ids.empty()) {
    std::vector<ColumnSpec> user_cols = {
        {"user", {"", ccsv::IdentifierRole{qoe_m("User")}, {}, {}, {}},
         [=](std::size_t r) { return user_ids[r]; }},
        {"nickname", {"", ccsv::AttributeRole{ns::iri(ns::kRdfs, "label")}, {}, {}, "pt-BR"},
         [&rng](std::size_t) { return maybe_empty(rng, "apelido " + nasty_text(rng, 3)); }},
    };
    out.push_back(assemble(rng, qoe_m("User"), std::move(user_cols), users));
  }

  if (trips > 0 || coin(rng)) {
    auto station_ref = [&rng, station_ids](std::size_t) {
      return maybe_empty(rng, pick(rng, station_ids));
    };
    std::vector<ColumnSpec> trip_cols = {
        {"id", {"", ccsv::IdentifierRole{qoe_m("Bicycle-Share_Trip")}, {}, {}, {}},
         [&rng](std::size_t r) { return random_id(rng, "t", r); }},
        {"user_id",
         {"", ccsv::ReferenceRole{qoe_m("User"), qoe_m("user")}, {}, {}, {}},
         [&rng, user_ids](std::size_t) {
           if (user_ids.empty()) return maybe_empty(rng, "ext" + std::to_string(uniform(rng, 0, 5)));
           return maybe_empty(rng, pick(rng, user_ids));
         }},
        {"origin_station_id",
         {"", ccsv::ReferenceRole{qoe_m("Bicycle-Share_Station"), qoe_m("originStation")}, {}, {}, {}},
         station_ref},
        {"destination_station_id",
         {"", ccsv::ReferenceRole{qoe_m("Bicycle-Share_Station"), qoe_m("destinationStation")},
          {}, {}, {}},
         station_ref},
        {"duration",
         {"", ccsv::AttributeRole{qoe_m("duration")}, {}, ns::iri(ns::kXsd, "integer"), {}},
         [&rng](std::size_t) { return maybe_empty(rng, std::to_string(uniform(rng, 30, 7200))); }},
    };
    out.push_back(assemble(rng, qoe_m("Bicycle-Share_Trip"), std::move(trip_cols), trips));
  }
  return out;
}

ingest::DatasetCharacterization random_characterization(Rng& rng) {
  ingest::CharacterizationAnswers a;
  a.data_source = ingest::DataSource{"http://hadatac.org/kg/system/Sys" + std::to_string(uniform(rng, 0, 9)),
                                     "System " + nasty_text(rng, 3), "Loader"};
  a.acquisition_kind =
      coin(rng) ? ingest::AcquisitionKind::kNative : ingest::AcquisitionKind::kManualAnnotation;
  a.study = ingest::StudyInfo{"http://hadatac.org/kg/study/s" + std::to_string(uniform(rng, 0, 9)),
                              "Study"};
  a.time_frame = ingest::TimeFrame{"2016-07-01T00:00:00Z", "2016-07-31T23:59:59.5Z"};
  return ingest::characterize(a);
}

const std::string kZoneClass = "http://example.org/agg#Zone";
const std::string kEventClass = "http://example.org/agg#Event";

ccsv::CcsvBundle random_aggregate_bundle(Rng& rng, std::size_t max_rows) {
  const std::string base = "http://example.org/agg#";
  std::size_t zones = uniform(rng, 1, 10);
  ccsv::DocumentParts z;
  z.dataset_iri = "http://example.org/agg/zones";
  z.records_class = kZoneClass;
  z.header = {"id", "label"};
  z.bindings = {{1, "id", ccsv::IdentifierRole{kZoneClass}, {}, {}, {}},
                {2, "label", ccsv::AttributeRole{ns::iri(ns::kRdfs, "label")}, {}, {}, {}}};
  for (std::size_t i = 0; i < zones; ++i) {
    z.rows.push_back({"z" + std::to_string(i), coin(rng, 0.2) ? "" : "Zone " + std::to_string(i % 4)});
  }

  ccsv::DocumentParts e;
  e.dataset_iri = "http://example.org/agg/events";
  e.records_class = kEventClass;
  e.header = {"id", "zone", "value", "category"};
  e.bindings = {{1, "id", ccsv::IdentifierRole{kEventClass}, {}, {}, {}},
                {2, "zone", ccsv::ReferenceRole{kZoneClass, base + "zone"}, "|", {}, {}},
                {3, "value", ccsv::AttributeRole{base + "value"}, {}, ns::iri(ns::kXsd, "decimal"), {}},
                {4, "category", ccsv::AttributeRole{base + "category"}, {}, {}, {}}};
  std::size_t rows = uniform(rng, 0, max_rows);
  std::uniform_real_distribution<double> value(-1e4, 1e4);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string zone;
    double p = std::uniform_real_distribution<double>(0, 1)(rng);
    if (p < 0.1) {
      zone = "";
    } else if (p < 0.15) {
      zone = "z" + std::to_string(uniform(rng, 0, zones - 1)) + "|z" +
             std::to_string(uniform(rng, 0, zones - 1));
    } else {
      zone = "z" + std::to_string(uniform(rng, 0, zones - 1));
    }
    std::string v;
    if (!coin(rng, 0.1)) {
      char buf[40];
      if (coin(rng)) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(value(rng)));
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", value(rng));
      }
      v = buf;
    }
    std::string cat = coin(rng, 0.1) ? "" : std::string(1, static_cast<char>('a' + uniform(rng, 0, 2)));
    e.rows.push_back({"e" + std::to_string(r), zone, v, cat});
  }
  ccsv::CcsvBundle b;
  b.documents.push_back(ccsv::CcsvDocument::build(std::move(e)));
  b.documents.push_back(ccsv::CcsvDocument::build(std::move(z)));
  return b;
}

std::vector<dashboard::FilterExpr> random_filters(Rng& rng, const ccsv::CcsvBundle& bundle) {
  const auto* events = bundle.find_by_class(kEventClass);
  const auto* zones = bundle.find_by_class(kZoneClass);
  std::vector<dashboard::FilterExpr> out;
  std::size_t n = uniform(rng, 1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    switch (uniform(rng, 0, 4)) {
      case 0:
        out.push_back({events->name(), "category", dashboard::FilterOp::kEq,
                       {std::string(1, static_cast<char>('a' + uniform(rng, 0, 2)))}});
        break;
      case 1:
        out.push_back({events->name(), "category", dashboard::FilterOp::kIn, {"a", "c"}});
        break;
      case 2: {
        double lo = std::uniform_real_distribution<double>(-1e4, 5e3)(rng);
        double hi = lo + std::uniform_real_distribution<double>(0, 1e4)(rng);
        char a[40], b[40];
        std::snprintf(a, sizeof a, "%.6f", lo);
        std::snprintf(b, sizeof b, "%.6f", hi);
        out.push_back({events->name(), "value", dashboard::FilterOp::kRange, {a, b}});
        break;
      }
      case 3:
        out.push_back({zones->name(), "label", dashboard::FilterOp::kEq,
                       {"Zone " + std::to_string(uniform(rng, 0, 3))}});
        break;
      default:
        out.push_back({events->name(), "zone", dashboard::FilterOp::kEq,
                       {"z" + std::to_string(uniform(rng, 0, 3))}});
        break;
    }
  }
  return out;
}

}  // namespace forge::testing
