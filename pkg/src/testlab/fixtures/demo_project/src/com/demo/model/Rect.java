package com.demo.model;

public class Rect extends Shape {
    private double w;
    private double h;

    public Rect(Point origin, double w, double h) {
        super(origin);
        this.w = w;
        this.h = h;
    }

    public double area() {
        return w * h;
    }

    public boolean isSquare() {
        return w == h;
    }

    public Rect scaled(double factor) {
        if (factor <= 0) {
            throw new IllegalArgumentException("factor must be positive");
        }
        return new Rect(origin, w * factor, h * factor);
    }
}
