package com.demo.model;

public class Dot extends Circle {
    public Dot(Point origin) {
        super(origin, 0.5);
    }

    public boolean isTiny() {
        return area() < 1.0;
    }
}
