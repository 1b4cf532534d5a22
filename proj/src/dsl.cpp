#include "tempo/dsl.hpp"
