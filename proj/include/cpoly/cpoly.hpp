#pragma once

#include "cpoly/constructions.hpp"
#include "cpoly/domain.hpp"
#include "cpoly/domains.hpp"
#include "cpoly/engine.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/experiment.hpp"
#include "cpoly/geometry.hpp"
#include "cpoly/normal_arc.hpp"
#include "cpoly/oracle.hpp"
#include "cpoly/placed_body.hpp"
#include "cpoly/random_scene.hpp"
#include "cpoly/rng.hpp"
#include "cpoly/scene.hpp"
#include "cpoly/scene_io.hpp"
#include "cpoly/svg.hpp"
