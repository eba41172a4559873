#include "kpart/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kpart/constructions.hpp"
#include "kpart/covers.hpp"
#include "kpart/enumerate.hpp"
#include "kpart/parallel.hpp"
#include "kpart/search.hpp"
#include "kpart/stirling.hpp"
#include "kpart/verify.hpp"

namespace kpart::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kSchema = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  int iso_budget = kDefaultIsomorphismBudget;
};

std::string default_cache_dir() {
  const char* env = std::getenv("KPART_CACHE_DIR");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".kpart-cache");
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Append-only JSON-lines checkpoint for one (command, config) pair.
class Cache {
 public:
  Cache(const RunConfig& cfg, std::string command, json config, std::uint64_t seed) {
    if (cfg.no_cache) return;
    const std::string hash = fnv1a_hex(command + "|" + config.dump());
    fs::path dir = cfg.cache_dir.empty() ? fs::path(default_cache_dir()) : fs::path(cfg.cache_dir);
    fs::create_directories(dir);
    path_ = dir / (command + "-" + hash + ".jsonl");
    if (fs::exists(path_)) {
      std::ifstream in(path_);
      std::string line;
      while (std::getline(in, line)) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || j.value("kind", "") != "entry") continue;
        entries_[j.at("key").get<std::string>()] = j.at("payload");
      }
    } else {
      json header = {{"schema", kSchema}, {"kind", "header"},          {"command", command},
                     {"config", config},  {"config_hash", hash},      {"seed", seed},
                     {"timestamp", utc_timestamp()}};
      std::ofstream(path_) << header.dump() << '\n';
    }
  }

  bool enabled() const { return !path_.empty(); }
  const json* find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }
  void put(const std::string& key, const json& payload) {
    entries_[key] = payload;
    if (!enabled()) return;
    std::ofstream out(path_, std::ios::app);
    out << json{{"kind", "entry"}, {"key", key}, {"payload", payload}}.dump() << '\n';
  }

 private:
  fs::path path_;
  std::map<std::string, json> entries_;
};

json header_json(std::string_view command, std::uint64_t seed) {
  return {{"schema", kSchema}, {"kind", "header"}, {"command", command}, {"seed", seed}};
}

// --- partitions and families -------------------------------------------------

PartialPartition blocks_from_json(const json& arr, int n) {
  std::vector<Block> blocks;
  for (const json& b : arr) blocks.push_back(Block::of(b.get<std::vector<int>>()));
  return PartialPartition(n, std::move(blocks));
}

json blocks_to_json(const PartialPartition& p) {
  json arr = json::array();
  for (Block b : p.blocks()) arr.push_back(b.elements());
  return arr;
}

FamilySpec spec_from_json(const json& j, std::optional<FamilyKind> kind) {
  if (!j.is_object()) throw UsageError("family spec must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchema) throw UsageError("unsupported spec schema");
  GroundParams p{j.at("n").get<int>(), j.at("k").get<int>(), j.at("t").get<int>()};
  std::string name = j.value("kind", "");
  if (!kind && name.empty()) throw UsageError("family spec needs a kind");
  bool h1 = name == "h1";
  if (!name.empty()) {
    FamilyKind parsed = parse_family_kind(name);
    if (kind && *kind != parsed) throw UsageError("spec kind disagrees with the subcommand");
    kind = parsed;
  }
  const bool has_anchor = j.contains("anchor");
  switch (*kind) {
    case FamilyKind::Star:
      return has_anchor ? FamilySpec::star(p, blocks_from_json(j.at("anchor"), p.n)) : FamilySpec::named_star(p);
    case FamilyKind::Alpha:
      return has_anchor ? FamilySpec::alpha(p, blocks_from_json(j.at("anchor"), p.n)) : FamilySpec::named_alpha(p);
    case FamilyKind::HM:
      if (has_anchor) {
        PartialPartition m = blocks_from_json(j.at("anchor"), p.n);
        PartialPartition x = j.contains("x") ? blocks_from_json(j.at("x"), p.n) : first_singletons(p.n, p.t);
        return FamilySpec::hm(p, std::move(x), std::move(m));
      }
      return h1 ? FamilySpec::named_h1(p) : FamilySpec::named_hm(p);
  }
  throw UsageError("unknown family kind");
}

json spec_to_json(const FamilySpec& s) {
  json j = {{"schema", kSchema},
            {"kind", to_string(s.kind)},
            {"n", s.params.n},
            {"k", s.params.k},
            {"t", s.params.t},
            {"anchor", blocks_to_json(s.anchor)}};
  if (s.kind == FamilyKind::HM) j["x"] = blocks_to_json(s.core);
  return j;
}

json family_header(const Family& f) {
  return {{"schema", kSchema},      {"kind", "family"},       {"n", f.params().n},
          {"k", f.params().k},      {"t", f.params().t},      {"size", f.size()}};
}

json family_to_json(const Family& f) {
  json j = family_header(f);
  json members = json::array();
  for (const SetPartition& m : f) members.push_back(to_string(m));
  j["members"] = members;
  return j;
}

void write_family(std::ostream& out, const Family& f, std::string_view format) {
  if (format == "json") {
    out << family_to_json(f).dump() << '\n';
  } else if (format == "csv") {
    out << "rgs,blocks\n";
    for (const SetPartition& m : f) {
      std::string rgs;
      for (std::uint8_t c : m.rgs()) rgs += static_cast<char>('0' + c);
      out << rgs << ',' << to_string(m) << '\n';
    }
  } else {
    out << family_header(f).dump() << '\n';
    for (const SetPartition& m : f) out << json(to_string(m)).dump() << '\n';
  }
}

Family load_family(const std::string& source, const RunConfig& cfg) {
  if (!source.empty() && source.front() == '{') {
    json j = json::parse(source, nullptr, false);
    if (j.is_discarded()) throw UsageError("family spec is not valid JSON");
    return materialize(spec_from_json(j, std::nullopt), cfg.budget, cfg.workers);
  }
  std::ifstream in(source);
  if (!in) throw UsageError("cannot open family file " + source);
  std::string line;
  std::optional<GroundParams> params;
  std::vector<SetPartition> members;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!params) {
      json h = json::parse(line, nullptr, false);
      if (h.is_discarded() || !h.is_object()) throw UsageError("family file must start with a JSON header");
      params = GroundParams{h.at("n").get<int>(), h.at("k").get<int>(), h.at("t").get<int>()};
      params->validate();
      if (h.contains("members")) {
        for (const json& m : h.at("members")) members.push_back(parse_set_partition(m.get<std::string>(), params->n));
      }
      continue;
    }
    std::string literal = line;
    json j = json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.is_string()) literal = j.get<std::string>();
    members.push_back(parse_set_partition(literal, params->n));
  }
  if (!params) throw UsageError("family file " + source + " is empty");
  return Family(*params, std::move(members));
}

// --- subcommands ---------------------------------------------------------------

int cmd_stirling(const RunConfig& cfg, long n, long k, std::ostream& out) {
  if (n < 0 || k < 0) throw UsageError("stirling needs n, k >= 0");
  std::string value = to_string(stirling(n, k));
  if (cfg.format == "json") {
    out << json{{"schema", kSchema}, {"command", "stirling"}, {"n", n}, {"k", k}, {"value", value}}.dump() << '\n';
  } else if (cfg.format == "csv") {
    out << "n,k,value\n" << n << ',' << k << ',' << value << '\n';
  } else {
    out << value << '\n';
  }
  return kExitPass;
}

int cmd_enum(const RunConfig& cfg, int n, int k, bool count_only, std::ostream& out) {
  if (k < 1 || k > n || n > kMaxGround) throw UsageError("enum needs 1 <= k <= n <= 64");
  if (stirling(n, k) > BigCount(static_cast<unsigned long>(cfg.budget))) {
    throw BudgetExceeded("S(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the enumeration budget");
  }
  if (count_only) {
    json config = {{"n", n}, {"k", k}};
    Cache cache(cfg, "enum", config, 0);
    std::vector<EnumerationRange> ranges = split_by_prefix(n, k, std::min(n, 5));
    std::vector<std::uint64_t> counts(ranges.size(), 0);
    std::vector<bool> cached(ranges.size(), false);
    auto key_of = [](const EnumerationRange& r) {
      std::string key;
      for (std::uint8_t c : r.prefix) key += static_cast<char>('0' + c);
      return key;
    };
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      if (const json* hit = cache.find(key_of(ranges[i]))) {
        counts[i] = hit->get<std::uint64_t>();
        cached[i] = true;
      }
    }
    parallel_for(ranges.size(), cfg.workers, [&](std::size_t i) {
      if (!cached[i]) counts[i] = count_by_walking(ranges[i]);
    });
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      if (!cached[i]) cache.put(key_of(ranges[i]), counts[i]);
      total += counts[i];
    }
    if (cfg.format == "json") {
      out << json{{"schema", kSchema}, {"command", "enum"}, {"n", n}, {"k", k}, {"count", total}}.dump() << '\n';
    } else if (cfg.format == "csv") {
      out << "n,k,count\n" << n << ',' << k << ',' << total << '\n';
    } else {
      out << total << '\n';
    }
    return kExitPass;
  }
  std::vector<SetPartition> all;
  for (const SetPartition& p : partitions(n, k)) all.push_back(p);
  if (cfg.format == "json") {
    json members = json::array();
    for (const SetPartition& p : all) members.push_back(to_string(p));
    out << json{{"schema", kSchema}, {"command", "enum"}, {"n", n}, {"k", k}, {"count", all.size()}, {"partitions", members}}
               .dump()
        << '\n';
  } else {
    if (cfg.format == "csv") out << "rgs,blocks\n";
    for (const SetPartition& p : all) {
      if (cfg.format == "csv") {
        for (std::uint8_t c : p.rgs()) out << static_cast<char>('0' + c);
        out << ',';
      }
      out << to_string(p) << '\n';
    }
  }
  return kExitPass;
}

int cmd_family(const RunConfig& cfg, const std::string& kind_name, const std::string& spec_text, bool size,
               bool do_materialize, const std::string& member, bool check, std::ostream& out, std::ostream& err) {
  json j = json::parse(spec_text, nullptr, false);
  if (j.is_discarded()) throw UsageError("--spec is not valid JSON");
  if (kind_name == "h1" && !j.contains("kind") && !j.contains("anchor")) j["kind"] = "h1";
  FamilySpec spec = spec_from_json(j, parse_family_kind(kind_name));
  int status = kExitPass;
  if (!member.empty()) {
    SetPartition p = parse_set_partition(member, spec.params.n);
    if (p.k() != spec.params.k) throw UsageError("--member is not a k-partition");
    bool in = is_member(spec, p);
    if (cfg.format == "json") {
      out << json{{"schema", kSchema}, {"command", "family"}, {"spec", spec_to_json(spec)}, {"partition", to_string(p)},
                  {"member", in}}
                 .dump()
          << '\n';
    } else {
      out << (in ? "true" : "false") << '\n';
    }
  }
  if (do_materialize) {
    write_family(out, materialize(spec, cfg.budget, cfg.workers), cfg.format);
  }
  if (size || (member.empty() && !do_materialize)) {
    BigCount value = closed_form_size(spec);
    json payload = {{"schema", kSchema}, {"command", "family"}, {"spec", spec_to_json(spec)},
                    {"formula", closed_form_name(spec)}, {"size", to_string(value)}};
    if (check) {
      Family f = materialize(spec, cfg.budget, cfg.workers);
      payload["enumerated"] = f.size();
      if (BigCount(static_cast<unsigned long>(f.size())) != value) {
        err << "size mismatch: formula " << to_string(value) << ", enumeration " << f.size() << '\n';
        status = kExitFail;
      }
    }
    if (cfg.format == "json") {
      out << payload.dump() << '\n';
    } else if (cfg.format == "csv") {
      out << "kind,n,k,t,formula,size\n"
          << to_string(spec.kind) << ',' << spec.params.n << ',' << spec.params.k << ',' << spec.params.t << ','
          << closed_form_name(spec) << ',' << to_string(value) << '\n';
    } else {
      out << to_string(value) << '\n';
    }
  }
  return status;
}

json classification_to_json(const CoverClassification& c) {
  json j = {{"shape", to_string(c.shape)}, {"union_block_count", c.union_block_count},
            {"core_structure_ok", c.core_structure_ok}};
  if (c.core) j["core"] = to_string(*c.core);
  if (c.union_blocks) j["union"] = to_string(*c.union_blocks);
  if (c.witness_pair) j["witness_pair"] = {to_string(c.witness_pair->first), to_string(c.witness_pair->second)};
  return j;
}

int cmd_tau(const RunConfig& cfg, const std::string& source, int t, std::ostream& out) {
  Family f = load_family(source, cfg);
  if (t <= 0) t = f.params().t;
  CoverReport rep = covering_number(f, t);
  if (cfg.format == "json") {
    out << json{{"schema", kSchema}, {"command", "tau"}, {"t", t}, {"size", f.size()}, {"tau", rep.tau},
                {"witness", to_string(rep.witness)}}
               .dump()
        << '\n';
  } else if (cfg.format == "csv") {
    out << "t,size,tau,witness\n" << t << ',' << f.size() << ',' << rep.tau << ',' << to_string(rep.witness) << '\n';
  } else {
    out << rep.tau << '\n' << "witness " << to_string(rep.witness) << '\n';
  }
  return kExitPass;
}

int cmd_covers(const RunConfig& cfg, const std::string& source, int t, int max_blocks, bool classify,
               std::ostream& out) {
  Family f = load_family(source, cfg);
  if (t <= 0) t = f.params().t;
  if (max_blocks <= 0) max_blocks = t + 1;
  std::vector<PartialPartition> covers;
  for (PartialPartition& c : minimal_t_covers(f.members(), t, max_blocks)) covers.push_back(std::move(c));
  json payload = {{"schema", kSchema}, {"command", "covers"}, {"t", t}, {"max_blocks", max_blocks}};
  json list = json::array();
  for (const PartialPartition& c : covers) list.push_back(to_string(c));
  payload["covers"] = list;
  std::optional<CoverClassification> cls;
  std::optional<int> tau;
  if (classify) {
    CoverReport rep = covering_number(f, t);
    tau = rep.tau;
    payload["tau"] = rep.tau;
    if (rep.classification) {
      cls = rep.classification;
      payload["classification"] = classification_to_json(*cls);
    }
  }
  if (cfg.format == "json") {
    out << payload.dump() << '\n';
  } else if (cfg.format == "csv") {
    out << "cover,blocks\n";
    for (const PartialPartition& c : covers) out << to_string(c) << ',' << c.size() << '\n';
  } else {
    for (const PartialPartition& c : covers) out << to_string(c) << '\n';
    if (tau) {
      out << "tau " << *tau << '\n';
      if (cls) {
        out << "shape " << to_string(cls->shape);
        if (cls->core) out << " core " << to_string(*cls->core);
        out << (cls->core_structure_ok ? "" : " (core structure violated)") << '\n';
      } else {
        out << "shape n/a (tau != t+1)\n";
      }
    }
  }
  return kExitPass;
}

int cmd_search(const RunConfig& cfg, const std::string& mode, int n, int k, int t, const std::string& source,
               const std::string& other, std::size_t witness_cap, std::ostream& out) {
  if (mode == "max" || mode == "maximal-nontrivial") {
    GroundParams p{n, k, t};
    p.validate();
    json config = {{"mode", mode}, {"n", n}, {"k", k}, {"t", t}, {"witness_cap", witness_cap}};
    Cache cache(cfg, "search", config, 0);
    json payload;
    if (const json* hit = cache.find("result")) {
      payload = *hit;
    } else if (mode == "max") {
      SearchResult res = max_family(p, cfg.clique_budget, witness_cap);
      json witnesses = json::array();
      for (const Family& f : res.witnesses) witnesses.push_back(family_to_json(f));
      payload = {{"schema", kSchema}, {"command", "search max"}, {"n", n}, {"k", k}, {"t", t},
                 {"max_size", to_string(res.max_size)}, {"star_size", to_string(stirling(n - t, k - t))},
                 {"witness_count", res.witness_count}, {"threshold_met", res.threshold_met},
                 {"matches_star", res.matches_star},
                 {"all_witnesses_singleton_stars", res.all_witnesses_singleton_stars}, {"witnesses", witnesses}};
      cache.put("result", payload);
    } else {
      NontrivialSearchResult res = enumerate_maximal_nontrivial(p, cfg.clique_budget);
      json families = json::array();
      for (const NontrivialFamilyCheck& c : res.families) {
        json item = family_to_json(c.family);
        item["z"] = c.z ? json(to_string(*c.z)) : json(nullptr);
        item["equals_alpha"] = c.equals_alpha;
        item["closure_stable"] = c.closure_stable;
        families.push_back(item);
      }
      payload = {{"schema", kSchema}, {"command", "search maximal-nontrivial"}, {"n", n}, {"k", k}, {"t", t},
                 {"maximal_count", res.maximal_count}, {"nontrivial_count", res.families.size()},
                 {"classification_holds", res.classification_holds}, {"families", families}};
      cache.put("result", payload);
    }
    if (cfg.format == "json") {
      out << payload.dump() << '\n';
    } else if (mode == "max") {
      if (cfg.format == "csv") {
        out << "n,k,t,max_size,star_size,witness_count,matches_star\n"
            << n << ',' << k << ',' << t << ',' << payload["max_size"].get<std::string>() << ','
            << payload["star_size"].get<std::string>() << ',' << payload["witness_count"] << ','
            << payload["matches_star"] << '\n';
      } else {
        out << "max " << payload["max_size"].get<std::string>() << " (star " << payload["star_size"].get<std::string>()
            << ")\nmaximum families " << payload["witness_count"] << "\nall singleton stars "
            << payload["all_witnesses_singleton_stars"] << '\n';
      }
    } else {
      if (cfg.format == "csv") out << "size,z,equals_alpha,closure_stable\n";
      if (cfg.format == "text") {
        out << "maximal families " << payload["maximal_count"] << ", non-trivial " << payload["nontrivial_count"]
            << '\n';
      }
      for (const json& item : payload["families"]) {
        std::string z = item["z"].is_null() ? "-" : item["z"].get<std::string>();
        if (cfg.format == "csv") {
          out << item["size"] << ',' << z << ',' << item["equals_alpha"] << ',' << item["closure_stable"] << '\n';
        } else {
          out << "size " << item["size"] << " z " << z << " equals_alpha " << item["equals_alpha"] << '\n';
        }
      }
    }
    return mode == "maximal-nontrivial" && !payload["classification_holds"].get<bool>() ? kExitFail : kExitPass;
  }
  if (mode == "closure") {
    if (source.empty()) throw UsageError("search closure needs --family");
    write_family(out, maximal_closure(load_family(source, cfg), cfg.budget), cfg.format);
    return kExitPass;
  }
  if (mode == "iso") {
    if (source.empty() || other.empty()) throw UsageError("search iso needs --family and --other");
    bool iso = isomorphic(load_family(source, cfg), load_family(other, cfg), cfg.iso_budget);
    if (cfg.format == "json") {
      out << json{{"schema", kSchema}, {"command", "search iso"}, {"isomorphic", iso}}.dump() << '\n';
    } else {
      out << (iso ? "true" : "false") << '\n';
    }
    return kExitPass;
  }
  throw UsageError("unknown search mode " + mode);
}

std::string point_key(const Point& point) {
  std::string key;
  for (const auto& [name, value] : point) key += name + "=" + std::to_string(value) + ";";
  return key;
}

void print_summaries(const std::vector<ClaimSummary>& sums, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "csv") {
    out << "claim,total,passes,failures,tight_points\n";
    for (const ClaimSummary& s : sums) {
      out << s.claim << ',' << s.total << ',' << s.passes << ',' << s.failures << ',' << s.tight_points << '\n';
    }
  } else {
    out << std::left << std::setw(18) << "claim" << std::right << std::setw(8) << "total" << std::setw(8) << "pass"
        << std::setw(8) << "fail" << std::setw(8) << "tight" << '\n';
    for (const ClaimSummary& s : sums) {
      out << std::left << std::setw(18) << s.claim << std::right << std::setw(8) << s.total << std::setw(8) << s.passes
          << std::setw(8) << s.failures << std::setw(8) << s.tight_points << '\n';
    }
  }
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& claims_in, const std::string& grid_text,
               std::ostream& out, std::ostream& err) {
  VerifyGrid grid = parse_grid(grid_text);
  if (cfg.seed) grid.seed = *cfg.seed;
  std::vector<std::string> claims;
  for (const std::string& c : claims_in) {
    if (c == "all") {
      claims.insert(claims.end(), claim_ids().begin(), claim_ids().end());
    } else {
      require_claim(c);
      claims.push_back(c);
    }
  }
  std::vector<VerdictRecord> records;
  for (const std::string& claim : claims) {
    json config = {{"claim", claim}, {"grid", grid.canonical()}};
    Cache cache(cfg, "verify", config, grid.seed);
    std::vector<Point> points = grid_points(claim, grid);
    std::vector<std::vector<VerdictRecord>> slots(points.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (const json* hit = cache.find(point_key(points[i]))) {
        for (const json& r : *hit) slots[i].push_back(record_from_json(r));
      } else {
        todo.push_back(i);
      }
    }
    const std::size_t batch = static_cast<std::size_t>(std::max(cfg.workers, 1)) * 8;
    for (std::size_t start = 0; start < todo.size(); start += batch) {
      std::size_t count = std::min(batch, todo.size() - start);
      parallel_for(count, cfg.workers, [&](std::size_t j) {
        std::size_t i = todo[start + j];
        slots[i] = check_point(claim, points[i], grid);
      });
      for (std::size_t j = 0; j < count; ++j) {
        std::size_t i = todo[start + j];
        json arr = json::array();
        for (const VerdictRecord& r : slots[i]) arr.push_back(to_json(r));
        cache.put(point_key(points[i]), arr);
      }
    }
    for (auto& slot : slots) {
      for (VerdictRecord& r : slot) records.push_back(std::move(r));
    }
  }
  std::vector<ClaimSummary> sums = summarize(records);
  bool failed = false;
  for (const VerdictRecord& r : records) {
    if (r.pass) continue;
    failed = true;
    err << "FAIL " << r.key() << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << r.note << '\n';
  }
  if (cfg.format == "json") {
    json h = header_json("verify", grid.seed);
    h["grid"] = grid.canonical();
    out << h.dump() << '\n';
    for (const VerdictRecord& r : records) out << to_json(r).dump() << '\n';
    for (const ClaimSummary& s : sums) {
      json j = to_json(s);
      j["kind"] = "summary";
      out << j.dump() << '\n';
    }
  } else {
    print_summaries(sums, cfg, out);
  }
  return failed ? kExitFail : kExitPass;
}

int cmd_report(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
  fs::path root = dir.empty() ? fs::path(default_cache_dir()) : fs::path(dir);
  if (!fs::is_directory(root)) throw UsageError("no cache directory at " + root.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("verify-", 0) == 0 && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<VerdictRecord> records;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || j.value("kind", "") != "entry") continue;
      for (const json& r : j.at("payload")) records.push_back(record_from_json(r));
    }
  }
  std::vector<ClaimSummary> sums = summarize(records);
  if (cfg.format == "json") {
    for (const ClaimSummary& s : sums) out << to_json(s).dump() << '\n';
  } else {
    print_summaries(sums, cfg, out);
  }
  bool failed = std::any_of(sums.begin(), sums.end(), [](const ClaimSummary& s) { return s.failures > 0; });
  return failed ? kExitFail : kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for t-intersecting families of set partitions", "kpart"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;
  app.add_option("--format", cfg.format, "Output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default $KPART_CACHE_DIR or .kpart-cache)");
  app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write the cache");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 256));
  auto* seed_opt = app.add_option("--seed", seed, "Random seed for sampled instances");
  app.add_option("--budget", cfg.budget, "Enumeration budget on S(n,k)")->check(CLI::PositiveNumber);
  app.add_option("--clique-budget", cfg.clique_budget, "Budget on S(n,k) for exhaustive searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--iso-budget", cfg.iso_budget, "Largest n for isomorphism tests")->check(CLI::PositiveNumber);

  long sn = 0, sk = 0;
  auto* st = app.add_subcommand("stirling", "Stirling partition number S(n,k)");
  st->add_option("n", sn)->required();
  st->add_option("k", sk)->required();

  int en = 0, ek = 0;
  bool count_only = false;
  auto* en_cmd = app.add_subcommand("enum", "List the k-partitions of [n] in rgs order");
  en_cmd->add_option("n", en)->required();
  en_cmd->add_option("k", ek)->required();
  en_cmd->add_flag("--count-only", count_only, "Print only the count");

  std::string fam_kind, fam_spec, fam_member;
  bool fam_size = false, fam_mat = false, fam_check = false;
  auto* fam = app.add_subcommand("family", "Construction sizes, members and membership");
  fam->add_option("kind", fam_kind, "star, alpha, hm or h1")->required()->check(CLI::IsMember({"star", "alpha", "hm", "h1"}));
  fam->add_option("--spec", fam_spec, "JSON spec {\"n\",\"k\",\"t\",\"anchor\",\"x\"}")->required();
  fam->add_flag("--size", fam_size, "Closed-form size");
  fam->add_flag("--materialize", fam_mat, "List all members");
  fam->add_option("--member", fam_member, "Test membership of a partition literal");
  fam->add_flag("--check", fam_check, "Cross-check the size by enumeration");

  std::string tau_family;
  int tau_t = 0;
  auto* tau = app.add_subcommand("tau", "t-covering number of a family");
  tau->add_option("--family", tau_family, "Family file or JSON spec")->required();
  tau->add_option("-t", tau_t, "Intersection threshold (default: the family's t)");

  std::string cov_family;
  int cov_t = 0, cov_max = 0;
  bool cov_classify = false;
  auto* cov = app.add_subcommand("covers", "Inclusion-minimal t-covers of a family");
  cov->add_option("--family", cov_family, "Family file or JSON spec")->required();
  cov->add_option("-t", cov_t, "Intersection threshold (default: the family's t)");
  cov->add_option("--max-blocks", cov_max, "Largest cover size (default t+1)");
  cov->add_flag("--classify", cov_classify, "Classify the (t+1)-block covers");

  std::string s_mode, s_family, s_other;
  int s_n = 0, s_k = 0, s_t = 0;
  std::size_t s_cap = kDefaultWitnessCap;
  auto* se = app.add_subcommand("search", "Exhaustive searches at tiny n");
  se->add_option("mode", s_mode, "max, maximal-nontrivial, closure or iso")
      ->required()
      ->check(CLI::IsMember({"max", "maximal-nontrivial", "closure", "iso"}));
  se->add_option("-n", s_n, "Ground set size");
  se->add_option("-k", s_k, "Number of blocks");
  se->add_option("-t", s_t, "Intersection threshold");
  se->add_option("--family", s_family, "Family file or JSON spec (closure, iso)");
  se->add_option("--other", s_other, "Second family (iso)");
  se->add_option("--witness-cap", s_cap, "Maximum families to report (max)");

  std::vector<std::string> v_claims;
  std::string v_grid = "default";
  auto* ve = app.add_subcommand("verify", "Check registry claims over a parameter grid");
  ve->add_option("--claim", v_claims, "Claim id or 'all' (repeatable)")->required();
  ve->add_option("--grid", v_grid, "'default' or overrides such as t=1:3,kt=2:5,dn=0:4");
  ve->footer(
      "CSV columns: claim,total,passes,failures,tight_points. JSON: a header line, one line per record "
      "{claim,point,lhs,rhs,pass,tight,mode,note}, then one summary line per claim.");

  std::string r_dir;
  auto* rep = app.add_subcommand("report", "Summarize cached verify results");
  rep->add_option("--dir", r_dir, "Cache directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (*seed_opt) cfg.seed = seed;

  try {
    if (*st) return cmd_stirling(cfg, sn, sk, out);
    if (*en_cmd) return cmd_enum(cfg, en, ek, count_only, out);
    if (*fam) return cmd_family(cfg, fam_kind, fam_spec, fam_size, fam_mat, fam_member, fam_check, out, err);
    if (*tau) return cmd_tau(cfg, tau_family, tau_t, out);
    if (*cov) return cmd_covers(cfg, cov_family, cov_t, cov_max, cov_classify, out);
    if (*se) return cmd_search(cfg, s_mode, s_n, s_k, s_t, s_family, s_other, s_cap, out);
    if (*ve) return cmd_verify(cfg, v_claims, v_grid, out, err);
    if (*rep) return cmd_report(cfg, r_dir, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "bad JSON input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kpart::cli
