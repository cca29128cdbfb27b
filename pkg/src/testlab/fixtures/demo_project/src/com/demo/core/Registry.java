package com.demo.core;

import com.demo.model.Shape;
import com.demo.model.Tag;

public class Registry {
    private Shape[] shapes;
    private Tag[] tags;
    private int size;

    public Registry(int capacity) {
        shapes = new Shape[capacity];
        tags = new Tag[capacity];
        size = 0;
    }

    public boolean register(Shape s, Tag t) {
        if (s == null || t == null) {
            return false;
        }
        if (size >= shapes.length) {
            grow();
        }
        shapes[size] = s;
        tags[size] = t;
        size++;
        return true;
    }

    private void grow() {
        Shape[] ns = new Shape[shapes.length * 2];
        Tag[] nt = new Tag[tags.length * 2];
        for (int i = 0; i < shapes.length; i++) {
            ns[i] = shapes[i];
            nt[i] = tags[i];
        }
        shapes = ns;
        tags = nt;
    }

    public Shape findByTag(String name) {
        for (int i = 0; i < size; i++) {
            if (tags[i].getName() != null && tags[i].getName().equals(name)) {
                return shapes[i];
            }
        }
        return null;
    }

    public double totalArea() {
        double total = 0.0;
        for (int i = 0; i < size; i++) {
            total += shapes[i].area();
        }
        return total;
    }

    public int getSize() { return size; }
}
