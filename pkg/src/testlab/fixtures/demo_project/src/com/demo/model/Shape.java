package com.demo.model;

public abstract class Shape {
    protected Point origin;
    protected String label;

    public Shape(Point origin) {
        this.origin = origin;
        this.label = "shape";
    }

    public abstract double area();

    public Point getOrigin() { return origin; }

    public String describe() {
        double a = area();
        if (a > 100.0) {
            return label + " (large)";
        } else if (a > 10.0) {
            return label + " (medium)";
        }
        return label + " (small)";
    }

    protected void relabel(String label) {
        if (label != null && label.length() > 0) {
            this.label = label;
        }
    }
}
