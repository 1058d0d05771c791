#pragma once

#include <filesystem>
#include <string>

#include "bwformal/pipeline.hpp"

namespace bwformal {

/// The BlocksWorld STRIPS domain file, compiled in so generation and
/// solving need no files on disk.
const std::string& builtin_domain_pddl();

/// Matching natural-language domain description.
const std::string& builtin_domain_nl();

/// BWFORMAL_ASSETS env var when set, else the source-tree assets directory
/// baked in at build time.
std::filesystem::path default_asset_dir();

/// Loads the five prompt files (planner.txt, formalizer.txt,
/// dnc_header.txt, dnc_fact.txt, higher_order.txt) from `dir`.
PromptSet load_prompts(const std::filesystem::path& dir);

}  // namespace bwformal
