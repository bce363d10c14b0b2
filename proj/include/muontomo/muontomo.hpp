#pragma once

#include "angular.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "detector.hpp"
#include "errors.hpp"
#include "pose.hpp"
#include "pyramid.hpp"
#include "scan.hpp"
#include "sinogram.hpp"
#include "vec3.hpp"
