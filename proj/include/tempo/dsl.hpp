#pragma once
#include "tempo/lang.hpp"
