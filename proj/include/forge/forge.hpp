#pragma once

// Everything except the session runner and its JSON layer (forge/runner.hpp).

#include "forge/corpus.hpp"
#include "forge/embeddings.hpp"
#include "forge/order_ideals.hpp"
#include "forge/parse.hpp"
