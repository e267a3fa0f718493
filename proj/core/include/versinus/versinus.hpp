#pragma once

#include "versinus/error.hpp"
#include "versinus/generate.hpp"
#include "versinus/ingest.hpp"
#include "versinus/layout.hpp"
#include "versinus/message.hpp"
#include "versinus/network.hpp"
#include "versinus/render.hpp"
#include "versinus/visual.hpp"
#include "versinus/window.hpp"
