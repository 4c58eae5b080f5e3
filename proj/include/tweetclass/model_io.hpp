#pragma once

#include <string>

#include "tweetclass/pipeline.hpp"

namespace twc {

// Versioned binary model container. Writing the same pipeline twice yields
// byte-identical files; a round trip through load is bit-exact.
void save_pipeline(const TrainedPipeline& p, const std::string& path);
TrainedPipeline load_pipeline(const std::string& path);

}  // namespace twc
