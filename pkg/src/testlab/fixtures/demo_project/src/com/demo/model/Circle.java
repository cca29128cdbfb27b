package com.demo.model;

public class Circle extends Shape {
    private double radius;

    public Circle(Point origin, double radius) {
        super(origin);
        this.radius = radius;
    }

    public double area() {
        return 3.14159265 * radius * radius;
    }

    public double getRadius() { return radius; }

    public boolean contains(Point p) {
        double dx = p.getX() - origin.getX();
        double dy = p.getY() - origin.getY();
        return dx * dx + dy * dy <= radius * radius;
    }
}
