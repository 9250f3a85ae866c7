#pragma once

#include <gtest/gtest.h>

#include "savchaos/error.hpp"

// Code of the savchaos::Error thrown by fn.
template <class Fn>
savchaos::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const savchaos::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return savchaos::ErrorCode::domain;
}
