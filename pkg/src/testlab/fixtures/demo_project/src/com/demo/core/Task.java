package com.demo.core;

public interface Task {
    int run(int input);

    String name();
}
