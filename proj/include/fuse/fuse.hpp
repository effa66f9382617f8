#pragma once

// Umbrella header for the fuse-kit parallel treebank library.

#include "fuse/core.hpp"
#include "fuse/tree.hpp"
#include "fuse/annot.hpp"
#include "fuse/align.hpp"
#include "fuse/store.hpp"
#include "fuse/validate.hpp"
#include "fuse/manifest.hpp"
#include "fuse/analysis.hpp"
