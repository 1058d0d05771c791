#include "bwformal/assets.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace bwformal {

const std::string& builtin_domain_pddl() {
  static const std::string text = R"((define (domain blocksworld)
  (:requirements :strips)
(:predicates (clear ?x)
             (on-table ?x)
             (arm-empty)
             (holding ?x)
             (on ?x ?y))

(:action pickup
  :parameters (?ob)
  :precondition (and (clear ?ob) (on-table ?ob) (arm-empty))
  :effect (and (holding ?ob) (not (clear ?ob)) (not (on-table ?ob))
               (not (arm-empty))))

(:action putdown
  :parameters  (?ob)
  :precondition (holding ?ob)
  :effect (and (clear ?ob) (arm-empty) (on-table ?ob)
               (not (holding ?ob))))

(:action stack
  :parameters  (?ob ?underob)
  :precondition (and (clear ?underob) (holding ?ob))
  :effect (and (arm-empty) (clear ?ob) (on ?ob ?underob)
               (not (clear ?underob)) (not (holding ?ob))))

(:action unstack
  :parameters  (?ob ?underob)
  :precondition (and (on ?ob ?underob) (clear ?ob) (arm-empty))
  :effect (and (holding ?ob) (clear ?underob)
               (not (on ?ob ?underob)) (not (clear ?ob)) (not (arm-empty)))))
)";
  return text;
}

const std::string& builtin_domain_nl() {
  static const std::string text =
      R"(I am playing with a set of blocks where I need to arrange the blocks into stacks. Here are the actions I can do

 Pick up a block
 Unstack a block from on top of another block
 Put down a block
 Stack a block on top of another block

 I have the following restrictions on my actions:
 I can only pick up or unstack one block at a time.
 I can only pick up or unstack a block if my hand is empty.
 I can only pick up a block if the block is on the table and the block is clear. A block is clear if the block has no other blocks on top of it and if the block is not picked up.
 I can only unstack a block from on top of another block if the block I am unstacking was really on top of the other block.
 I can only unstack a block from on top of another block if the block I am unstacking is clear.
 Once I pick up or unstack a block, I am holding the block.
 I can only put down a block that I am holding.
 I can only stack a block on top of another block if I am holding the block being stacked.
 I can only stack a block on top of another block if the block onto which I am stacking the block is clear.
 Once I put down or stack a block, my hand becomes empty.
 Once you stack a block on top of a second block, the second block is no longer clear.
)";
  return text;
}

std::filesystem::path default_asset_dir() {
  if (const char* env = std::getenv("BWFORMAL_ASSETS"); env && *env) {
    return env;
  }
#ifdef BWFORMAL_ASSET_DIR
  return BWFORMAL_ASSET_DIR;
#else
  return "assets";
#endif
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read prompt file " + path.string());
  }
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

PromptSet load_prompts(const std::filesystem::path& dir) {
  PromptSet prompts;
  prompts.planner = read_file(dir / "planner.txt");
  prompts.formalizer = read_file(dir / "formalizer.txt");
  prompts.dnc_header = read_file(dir / "dnc_header.txt");
  prompts.dnc_fact = read_file(dir / "dnc_fact.txt");
  prompts.higher_order = read_file(dir / "higher_order.txt");
  return prompts;
}

}  // namespace bwformal
