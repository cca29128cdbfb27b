package com.demo.model;

public class Tag {
    private String name;

    public String getName() { return name; }

    public void setName(String name) { this.name = name; }
}
