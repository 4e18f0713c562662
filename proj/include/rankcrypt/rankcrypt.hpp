#pragma once

// Umbrella header.

#include "rankcrypt/field.hpp"
#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/gpt.hpp"
#include "rankcrypt/linalg.hpp"
#include "rankcrypt/overbeck.hpp"
#include "rankcrypt/params.hpp"
#include "rankcrypt/rng.hpp"
#include "rankcrypt/serialize.hpp"
