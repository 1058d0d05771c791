#include "bwformal/dataset.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

#include "bwformal/assets.hpp"
#include "bwformal/nl.hpp"

namespace bwformal {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string to_string(Family f) {
  return f == Family::kXxl ? "xxl" : "unravel";
}

Family family_from_string(const std::string& s) {
  if (s == "xxl") return Family::kXxl;
  if (s == "unravel") return Family::kUnravel;
  throw std::invalid_argument("unknown family: " + s);
}

double ProblemInstance::compression_ratio() const {
  int clauses = nl_init_clauses + nl_goal_clauses;
  if (clauses == 0) return 0.0;
  return static_cast<double>(pddl_init_atoms + pddl_goal_atoms) / clauses;
}

double ProblemInstance::init_compression_ratio() const {
  if (nl_init_clauses == 0) return 0.0;
  return static_cast<double>(pddl_init_atoms) / nl_init_clauses;
}

BlocksState random_state(int n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("negative block count");
  BlocksState state;
  std::vector<int> order;
  for (int i = 1; i <= n; ++i) {
    state.blocks.push_back("block" + std::to_string(i));
    order.push_back(i);
  }
  rng.shuffle(order);
  for (int num : order) {
    std::string name = "block" + std::to_string(num);
    std::uint64_t slot = rng.below(state.stacks.size() + 1);
    if (slot == state.stacks.size()) {
      state.stacks.push_back({std::move(name)});
    } else {
      auto& stack = state.stacks[slot];
      stack.insert(stack.begin(), std::move(name));
    }
  }
  return state;
}

namespace {

ProblemInstance finish_instance(Family family, int n, std::uint64_t seed,
                                std::string id, const BlocksState& init,
                                const BlocksState& goal,
                                std::string nl_description) {
  ProblemInstance inst;
  inst.family = family;
  inst.n = n;
  inst.seed = seed;
  inst.id = id.empty() ? to_string(family) + "-n" + std::to_string(n)
                       : std::move(id);
  inst.nl_description = std::move(nl_description);

  inst.ground_truth.problem_name = inst.id;
  inst.ground_truth.domain_name = "blocksworld";
  inst.ground_truth.objects = init.blocks;
  inst.ground_truth.init = state_to_atoms(init);
  inst.ground_truth.goal = support_atoms(goal);

  inst.nl_init_clauses = count_init_clauses(inst.nl_description);
  inst.nl_goal_clauses = count_goal_clauses(inst.nl_description);
  inst.pddl_init_atoms = static_cast<int>(inst.ground_truth.init.size());
  inst.pddl_goal_atoms = static_cast<int>(inst.ground_truth.goal.size());
  return inst;
}

}  // namespace

ProblemInstance gen_xxl(int n, std::uint64_t seed, std::string id) {
  if (n < 1) throw std::invalid_argument("gen_xxl needs n >= 1");
  Rng rng(seed);
  BlocksState init = random_state(n, rng);
  BlocksState goal = random_state(n, rng);
  std::string nl = render_itemized_init(init) + "\n" + render_goal(goal);
  return finish_instance(Family::kXxl, n, seed, std::move(id), init, goal,
                         std::move(nl));
}

ProblemInstance gen_unravel(int n, std::uint64_t seed, std::string id) {
  if (n < 2) throw std::invalid_argument("gen_unravel needs n >= 2");
  Rng rng(seed);
  BlocksState init = odd_even_state(n);
  BlocksState goal = random_state(n, rng);
  std::string nl = render_compressed_init(n) + "\n" + render_goal(goal);
  return finish_instance(Family::kUnravel, n, seed, std::move(id), init,
                         goal, std::move(nl));
}

SuiteSpec default_suite(Family family) {
  return {family, {{5, 40}, {30, 40}, {50, 40}, {75, 40}, {100, 40}}};
}

std::vector<ProblemInstance> gen_suite(const SuiteSpec& spec,
                                       std::uint64_t seed) {
  int total = 0;
  for (const auto& [n, count] : spec.buckets) {
    if (count < 1) throw std::invalid_argument("bucket count must be >= 1");
    total += count;
  }
  std::vector<ProblemInstance> out;
  out.reserve(total);
  int index = 0;
  for (const auto& [n, count] : spec.buckets) {
    for (int i = 0; i < count; ++i) {
      ++index;
      std::string num = std::to_string(index);
      while (num.size() < 3) num.insert(num.begin(), '0');
      std::string id = "p" + num;
      std::uint64_t inst_seed = mix64(seed ^ mix64(fnv1a64(id)));
      out.push_back(spec.family == Family::kXxl
                        ? gen_xxl(n, inst_seed, id)
                        : gen_unravel(n, inst_seed, id));
    }
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

}  // namespace

void write_suite(const std::vector<ProblemInstance>& instances,
                 Family family, std::uint64_t seed,
                 const std::filesystem::path& dir) {
  std::set<std::string> ids;
  for (const auto& inst : instances) {
    if (!ids.insert(inst.id).second) {
      throw std::runtime_error("duplicate instance id: " + inst.id);
    }
  }
  std::filesystem::create_directories(dir);
  write_text(dir / "domain.pddl", builtin_domain_pddl());
  write_text(dir / "domain.nl", builtin_domain_nl());

  json manifest;
  manifest["family"] = to_string(family);
  manifest["seed"] = seed;
  manifest["instances"] = json::array();
  for (const auto& inst : instances) {
    write_text(dir / (inst.id + ".nl"), inst.nl_description + "\n");
    write_text(dir / (inst.id + ".pddl"), print_canonical(inst.ground_truth));
    manifest["instances"].push_back({{"id", inst.id},
                                     {"family", to_string(inst.family)},
                                     {"n", inst.n},
                                     {"seed", inst.seed},
                                     {"compression_ratio",
                                      inst.compression_ratio()}});
  }
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<ProblemInstance> load_suite(const std::filesystem::path& dir) {
  json manifest = json::parse(read_text(dir / "manifest.json"));
  DomainModel domain = parse_domain(read_text(dir / "domain.pddl"));
  std::vector<ProblemInstance> out;
  for (const auto& entry : manifest.at("instances")) {
    ProblemInstance inst;
    inst.id = entry.at("id").get<std::string>();
    inst.family = family_from_string(entry.at("family").get<std::string>());
    inst.n = entry.at("n").get<int>();
    inst.seed = entry.at("seed").get<std::uint64_t>();
    std::string nl = read_text(dir / (inst.id + ".nl"));
    while (!nl.empty() && nl.back() == '\n') nl.pop_back();
    inst.nl_description = std::move(nl);
    inst.ground_truth =
        parse_problem(read_text(dir / (inst.id + ".pddl")), &domain);
    inst.nl_init_clauses = count_init_clauses(inst.nl_description);
    inst.nl_goal_clauses = count_goal_clauses(inst.nl_description);
    inst.pddl_init_atoms = static_cast<int>(inst.ground_truth.init.size());
    inst.pddl_goal_atoms = static_cast<int>(inst.ground_truth.goal.size());
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace bwformal
